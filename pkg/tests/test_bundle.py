from fractions import Fraction

import pytest
from hypothesis import given

from bundledelta.bundle import BundleData, BundleError, Stability, load_bundle, slopes, validate

from conftest import one_step_bundles, semistable_bundles


def test_example_elliptic_valid():
    b = validate({"genus": 1, "rank": 2, "degree": 0, "stability": "strictly_semistable"})
    assert b.mu == 0 and b.hn_length == 1


def test_one_step_slopes():
    b = validate({"genus": 0, "rank": 2, "degree": 1, "hn_step": {"rank": 1, "degree": 1},
                  "stability": "unstable_one_step"})
    assert slopes(b) == (Fraction(1, 2), 1, 0)


def test_rank5_slopes():
    b = BundleData(0, 5, 3, "unstable_one_step", (2, 2))
    assert slopes(b) == (Fraction(3, 5), 1, Fraction(1, 3))


def test_semistable_slopes_equal():
    assert slopes(BundleData(0, 2, 0, "polystable")) == (0, 0, 0)


@pytest.mark.parametrize(
    "data,code",
    [
        ({"genus": 0, "rank": 2, "degree": 2, "hn_step": (1, 1), "stability": "unstable_one_step"},
         "slope_not_decreasing"),
        ({"genus": 0, "rank": 1, "degree": 2, "stability": "stable"}, "rank_out_of_range"),
        ({"genus": 0, "rank": 3, "degree": 2, "hn_step": (3, 1), "stability": "unstable_one_step"},
         "rank_out_of_range"),
        ({"genus": 0, "rank": 3, "degree": 2, "hn_step": (1, 1), "stability": "stable"},
         "inconsistent_stability_flag"),
        ({"genus": 0, "rank": 3, "degree": 2, "stability": "unstable_one_step"},
         "inconsistent_stability_flag"),
        ({"genus": 0, "rank": 3, "degree": 1, "stability": "strictly_semistable"},
         "inconsistent_stability_flag"),
        ({"genus": 0, "rank": 4, "degree": 2, "stability": "strictly_semistable", "subbundle_rank": 1},
         "inconsistent_stability_flag"),
        ({"genus": 0, "rank": 4, "degree": 0, "stability": "stable", "subbundle_rank": 1},
         "inconsistent_stability_flag"),
        ({"genus": 0, "rank": 4, "degree": 0, "stability": "bogus"}, "inconsistent_stability_flag"),
        ({"genus": -1, "rank": 2, "degree": 0, "stability": "stable"}, "invalid_field"),
        ({"genus": 0, "rank": 2, "degree": "1", "stability": "stable"}, "invalid_field"),
        ({"rank": 2, "degree": 0, "stability": "stable"}, "invalid_field"),
        ({"genus": 0, "rank": 4, "degree": 0, "stability": "stable",
          "hn_filtration": [[1, 3], [2, 2]]}, "unsupported_filtration"),
    ],
)
def test_validate_errors(data, code):
    with pytest.raises(BundleError) as err:
        validate(data)
    assert err.value.code == code


@given(one_step_bundles())
def test_degree_additivity_and_ordering(b):
    r, n = b.hn_step.rank, b.rank
    assert r * b.mu_max + (n - r) * b.mu_min == n * b.mu
    assert b.mu_max > b.mu > b.mu_min


@given(one_step_bundles())
def test_validate_idempotent(b):
    assert validate(validate(b)) == validate(b) == b


@given(semistable_bundles())
def test_semistable_blowup_center(b):
    center = b.blowup_center()
    assert center.mu_max == center.mu_min == b.mu


def test_load_toml_and_json(tmp_path):
    toml = tmp_path / "e.toml"
    toml.write_text('genus = 0\nrank = 2\ndegree = 1\nstability = "unstable_one_step"\n'
                    'hn_step = { rank = 1, degree = 1 }\n', encoding="utf-8")
    js = tmp_path / "e.json"
    js.write_text('{"genus": 0, "rank": 2, "degree": 1, "stability": "unstable_one_step",'
                  ' "hn_step": {"rank": 1, "degree": 1}}', encoding="utf-8")
    assert load_bundle(toml) == load_bundle(js)
    assert load_bundle(toml).stability is Stability.UNSTABLE_ONE_STEP


def test_load_garbage(tmp_path):
    p = tmp_path / "bad.toml"
    p.write_text("rank = = 2", encoding="utf-8")
    with pytest.raises(BundleError) as err:
        load_bundle(p)
    assert err.value.code == "unparseable_spec"
