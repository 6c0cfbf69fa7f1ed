import json

import pytest

from kaczmarz_rkhs.config import (
    DEFAULT_SEED,
    SUITES,
    SuiteConfig,
    builtin_measures,
    load_config,
    load_spec,
    load_tree,
    parse_config,
    parse_spec,
)
from kaczmarz_rkhs.errors import ConfigError
from kaczmarz_rkhs.measures import IFS, Atomic, Mixture, cantor, fourier


class TestParseSpec:
    def test_atomic(self):
        spec = parse_spec({"type": "atomic", "atoms": [[0.0, 0.5], [0.5, 0.5]]})
        assert isinstance(spec, Atomic) and len(spec.positions) == 2

    def test_ifs_default_weights(self):
        spec = parse_spec({"type": "ifs", "scale": 4, "digits": [0, 2]})
        assert isinstance(spec, IFS)
        assert abs(fourier(spec, 3) - fourier(cantor(4), 3)) < 1e-15

    def test_mixture_both_term_forms(self):
        a = parse_spec({"type": "mixture", "terms": [[0.5, "mu3"], [0.5, "delta0"]]})
        b = parse_spec({"type": "mixture", "terms": [
            {"coefficient": 0.5, "measure": "mu3"},
            {"coefficient": 0.5, "measure": {"type": "atomic", "atoms": [[0.0, 1.0]]}},
        ]})
        assert isinstance(a, Mixture)
        assert abs(fourier(a, 5) - fourier(b, 5)) < 1e-15

    def test_builtin_name(self):
        assert parse_spec("mu4") == builtin_measures()["mu4"]

    @pytest.mark.parametrize("node, field", [
        ({"type": "cloud"}, "type"),
        ({"type": "atomic", "atoms": []}, "atoms"),
        ({"type": "atomic", "atoms": [[0.1]]}, "atoms.0"),
        ({"type": "atomic", "atoms": [[0.1, "heavy"]]}, "atoms.0"),
        ({"type": "ifs", "scale": 2.5, "digits": [0]}, "scale"),
        ({"type": "mixture", "terms": [0.5]}, "terms.0"),
        ("nowhere", None),
    ])
    def test_errors_have_fields(self, node, field):
        with pytest.raises(ConfigError) as info:
            parse_spec(node)
        assert info.value.field == field

    def test_invalid_measure_is_config_error(self):
        with pytest.raises(ConfigError):
            parse_spec({"type": "atomic", "atoms": [[0.1, 0.3]]})  # weights do not sum to one


class TestYAMLLines:
    def test_line_of_bad_field(self, tmp_path):
        p = tmp_path / "m.yaml"
        p.write_text("type: atomic\natoms:\n  - [0.0, 0.5]\n  - [0.5, oops]\n")
        with pytest.raises(ConfigError) as info:
            load_spec(p)
        assert info.value.line == 4
        assert info.value.field == "atoms.1"
        assert "line 4" in str(info.value)

    def test_syntax_error_line(self):
        with pytest.raises(ConfigError) as info:
            load_tree("a: [1, 2\nb: 3\n")
        assert info.value.line is not None

    def test_json_is_accepted(self, tmp_path):
        p = tmp_path / "m.json"
        p.write_text(json.dumps({"type": "ifs", "scale": 3, "digits": [0, 2]}))
        assert isinstance(load_spec(p), IFS)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            load_spec(tmp_path / "absent.yaml")

    def test_tree_lines(self):
        data, lines = load_tree("suite: psd\norder: 64\nmeasures:\n  x: mu3\n")
        assert data["order"] == 64
        assert lines[("order",)] == 2 and lines[("measures", "x")] == 4


class TestSuiteConfig:
    def test_defaults(self):
        cfg = SuiteConfig()
        assert cfg.seed == DEFAULT_SEED == 0x5EED
        assert cfg.suites == SUITES and len(SUITES) == 11
        assert set(cfg.measures) == {"delta0", "two-atom", "mu3", "mu4", "mixture"}

    @pytest.mark.parametrize("kwargs, field", [
        ({"order": 4}, "order"),
        ({"depth": 0}, "depth"),
        ({"tol_scale": 0.0}, "tol_scale"),
        ({"tolerances": {"psd": -1}}, "tolerances.psd"),
        ({"radii": [0.5, 0.4]}, "radii"),
        ({"seed": -1}, "seed"),
        ({"suite": "nope"}, "suite"),
    ])
    def test_invalid(self, kwargs, field):
        with pytest.raises(ConfigError) as info:
            SuiteConfig(**kwargs)
        assert info.value.field == field

    def test_single_suite(self):
        assert SuiteConfig(suite="psd").suites == ("psd",)


class TestLoadConfig:
    def test_round_trip(self, tmp_path):
        p = tmp_path / "c.yaml"
        p.write_text(
            "suite: clark\norder: 64\nseed: 7\ntolerances:\n  clark: 1.0e-9\n"
            "measures:\n  thin:\n    type: ifs\n    scale: 5\n    digits: [0, 4]\n"
            "  blend:\n    type: mixture\n    terms: [[0.5, thin], [0.5, delta0]]\n"
        )
        cfg = load_config(p)
        assert cfg.suite == "clark" and cfg.order == 64 and cfg.seed == 7
        assert cfg.tolerances == {"clark": 1e-9}
        assert {"thin", "blend", "mu3"} <= set(cfg.measures)

    def test_overrides_win(self, tmp_path):
        p = tmp_path / "c.yaml"
        p.write_text("suite: clark\nseed: 7\n")
        cfg = load_config(p, seed=9, suite=None)
        assert cfg.seed == 9 and cfg.suite == "clark"

    def test_unknown_key_line(self, tmp_path):
        p = tmp_path / "c.yaml"
        p.write_text("suite: psd\n\ncolour: blue\n")
        with pytest.raises(ConfigError) as info:
            load_config(p)
        assert info.value.line == 3 and info.value.field == "colour"

    def test_bad_value_line(self, tmp_path):
        p = tmp_path / "c.yaml"
        p.write_text("suite: psd\norder: 3\n")
        with pytest.raises(ConfigError) as info:
            load_config(p)
        assert info.value.line == 2 and info.value.field == "order"

    def test_bad_nested_measure_line(self, tmp_path):
        p = tmp_path / "c.yaml"
        p.write_text("measures:\n  m:\n    type: ifs\n    scale: 3\n    digits: [0, two]\n")
        with pytest.raises(ConfigError) as info:
            load_config(p)
        assert info.value.line == 5 and info.value.field == "measures.m.digits.1"

    def test_not_a_mapping(self):
        with pytest.raises(ConfigError):
            parse_config([1, 2])

    def test_empty_file(self, tmp_path):
        p = tmp_path / "c.yaml"
        p.write_text("")
        assert load_config(p).suite == "all"
