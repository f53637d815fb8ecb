import json

import pytest

from asbq.config import (ConfigError, from_dict, parse_config, preset_config,
                         preset_dict, preset_names)


def minimal_doc():
    return {
        "grid": {"dims": 1, "n_x": 256, "l_x": 5.0},
        "model": {"eps_nl": 1.0, "eps_disp": 1.0},
        "initial_data": {"kind": "cavitation", "kappa": -1.0},
        "time": {"t_end": 1.0, "n_steps": 100},
    }


def test_minimal_document_fills_defaults():
    cfg = from_dict(minimal_doc())
    assert cfg.diagnostics.series_stride >= 1
    assert cfg.tracking.enabled is False
    assert cfg.output.directory == "."
    assert cfg.initial_data["alpha"] == 1.0


def test_empty_document_rejected():
    with pytest.raises(ConfigError, match="initial_data|grid"):
        parse_config("{}")


def test_invalid_json_rejected():
    with pytest.raises(ConfigError, match="invalid JSON"):
        parse_config("{not json")


def test_unknown_keys_rejected_with_path():
    doc = minimal_doc()
    doc["grid"]["n_z"] = 8
    with pytest.raises(ConfigError, match=r"grid\.n_z"):
        from_dict(doc)
    doc = minimal_doc()
    doc["bogus"] = 1
    with pytest.raises(ConfigError, match=r"config\.bogus"):
        from_dict(doc)


def test_path_qualified_messages():
    doc = minimal_doc()
    doc["time"]["n_steps"] = 0
    with pytest.raises(ConfigError, match=r"time\.n_steps"):
        from_dict(doc)
    doc = minimal_doc()
    doc["model"]["eps_disp"] = 0.0
    with pytest.raises(ConfigError, match=r"model\.eps_disp"):
        from_dict(doc)
    doc = minimal_doc()
    doc["initial_data"] = {"kind": "localized", "kappa": -2.0}
    with pytest.raises(ConfigError, match=r"initial_data\.kappa"):
        from_dict(doc)


def test_profile_kinds_need_2d_and_matched_eps():
    doc = minimal_doc()
    doc["initial_data"] = {"kind": "gaussian_on_eta", "c": 2.0, "amp": 0.3}
    with pytest.raises(ConfigError, match="2D"):
        from_dict(doc)
    doc["grid"] = {"dims": 2, "n_x": 256, "n_y": 64, "l_x": 10.0, "l_y": 3.0}
    doc["model"] = {"eps_nl": 1.0, "eps_disp": 0.5}
    with pytest.raises(ConfigError, match="eps_nl == eps_disp"):
        from_dict(doc)


def test_snapshot_times_bounds():
    doc = minimal_doc()
    doc["output"] = {"snapshot_times": [0.0, 2.0]}
    with pytest.raises(ConfigError, match="snapshot_times"):
        from_dict(doc)


def test_round_trip_through_json():
    cfg = preset_config("cavitation_k-1_a1_desk")
    again = parse_config(cfg.to_json())
    assert again == cfg
    assert json.loads(cfg.to_json())["tracking"]["window"]["hi_frac"] == 0.5


def test_preset_c2_gauss_plus_parameters():
    cfg = preset_config("c2_gauss_plus")
    assert (cfg.grid.n_x, cfg.grid.n_y) == (2 ** 12, 2 ** 7)
    assert (cfg.grid.l_x, cfg.grid.l_y) == (10.0, 3.0)
    assert cfg.initial_data == {"kind": "gaussian_on_eta", "c": 2.0,
                                "amp": 0.3, "alpha": 1.0}
    assert cfg.time.t_end == 20.0
    assert cfg.time.n_steps == 10_000
    assert cfg.model.eps_nl == cfg.model.eps_disp == 1.0


def test_preset_c11_cos_parameters():
    cfg = preset_config("c11_cos")
    assert (cfg.grid.n_x, cfg.grid.n_y) == (2 ** 14, 2 ** 7)
    assert (cfg.grid.l_x, cfg.grid.l_y) == (40.0, 3.0)
    assert cfg.initial_data == {"kind": "cos_deform", "c": 1.1, "a": 0.4}
    assert cfg.time.t_end == 100.0
    assert cfg.time.n_steps == 20_000


def test_preset_table_covers_documented_experiments():
    # every figure-generating experiment family must have a named preset
    names = set(preset_names())
    required = {
        "c2_gauss_plus", "c2_gauss_minus", "c2_gauss_vx", "c2_gauss_vy",
        "c2_cos",
        "c11_gauss", "c11_cos",
        "cavitation_1d",
        "cavitation_k-0.9_a1", "cavitation_k-1_a1", "cavitation_k-1_a0.5",
        "localized_k1", "localized_k10",
        "dsw_eps1e-2",
    }
    missing = required - names
    assert not missing, f"missing presets: {missing}"


def test_presets_resolve_to_fully_explicit_configs():
    for name in preset_names():
        cfg = preset_config(name)
        doc = cfg.to_dict()
        assert doc["time"]["n_steps"] >= 1
        assert doc["diagnostics"]["series_stride"] >= 1
        again = from_dict(doc)
        assert again == cfg


def test_desk_variants_shrink_grids():
    for name in preset_names():
        if not name.endswith("_desk"):
            continue
        full = preset_config(name[:-5])
        desk = preset_config(name)
        shrink = full.grid.n_x / desk.grid.n_x
        assert 4 <= shrink * (full.grid.n_y or 1) / (desk.grid.n_y or 1) <= 256


def test_unknown_preset():
    with pytest.raises(ConfigError, match="unknown preset"):
        preset_dict("nope")


def test_dsw_preset_uses_weak_dispersion():
    cfg = preset_config("dsw_eps1e-2")
    assert cfg.model.eps_nl == 1.0
    assert cfg.model.eps_disp == 0.01
