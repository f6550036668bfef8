import json
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from conftest import nonzero_rationals
from metaplectic import codec
from metaplectic.base_field import ExtField, Place
from metaplectic.codec import InputError, PreconditionError
from metaplectic.generators import rand_ext_field, rng_for
from metaplectic.transfer import delta0
from metaplectic.verify import _rand_gamma

GOLDEN = Path(__file__).parent / "golden"


@given(nonzero_rationals(10**6))
def test_fraction_round_trip(x):
    assert codec.frac(codec.fmt(x), "x") == x


def test_fmt_integers_stay_integers():
    assert codec.fmt(F(6, 3)) == 2
    assert codec.fmt(F(-3, 6)) == "-1/2"


@pytest.mark.parametrize("bad", [1.5, True, None, "1/0", "abc", [1]])
def test_frac_rejects(bad):
    with pytest.raises(InputError) as e:
        codec.frac(bad, "here")
    assert e.value.path == "here"


def test_place_parsing():
    assert codec.place("real") == Place.real()
    assert codec.place(7) == Place.padic(7)
    with pytest.raises(InputError):
        codec.place("7")
    with pytest.raises(PreconditionError):
        codec.place(15)


def test_matrix_ragged_rows_name_the_row():
    with pytest.raises(InputError) as e:
        codec.matrix([[1, 2], [3]], "m")
    assert e.value.path == "m[1]"
    with pytest.raises(InputError) as e:
        codec.matrix([[1, "x"]], "m")
    assert e.value.path == "m[0][1]"


def test_field_defaults():
    pl = Place.padic(5)
    assert codec.field(None, pl, "f").is_base
    K = codec.field({"f_poly": [2, 0, 1]}, pl, "f")  # x^2 + 2, unramified
    assert K.degree == 2
    assert codec.field_to_json(K) == {"p": 5, "f_poly": [2, 0, 1], "e_poly": [[-5, 0], [1, 0]]}


def test_field_wrong_prime():
    with pytest.raises(PreconditionError) as e:
        codec.field({"p": 3, "f_poly": [0, 1]}, Place.padic(5), "gamma1.factors[0].field")
    assert e.value.path == "gamma1.factors[0].field.p"


@given(st.sampled_from([3, 5, 7]), st.integers(0, 10**6))
def test_field_round_trip(p, seed):
    K = rand_ext_field(rng_for(seed, "codec"), Place.padic(p))
    back = codec.field(codec.field_to_json(K), Place.padic(p), "f")
    assert isinstance(back, ExtField)
    assert codec.field_to_json(back) == codec.field_to_json(K)
    assert back.degree == K.degree


@pytest.mark.parametrize("seed", range(15))
def test_pair_round_trip(seed):
    rng = rng_for(seed, "codec-pair")
    place = rng.choice([Place.padic(3), Place.padic(5), Place.real()])
    g = _rand_gamma(rng, place)
    obj = json.loads(json.dumps(codec.pair_to_json(g)))
    g2, c = codec.pair(obj)
    assert c is None
    assert codec.pair_to_json(g2) == codec.pair_to_json(g)
    assert delta0(g2) == delta0(g)


def test_golden_pair_files_parse():
    for name in ("pair_regular.json", "pair_twist.json", "pair_phase.json"):
        g, _ = codec.pair(json.loads((GOLDEN / name).read_text()))
        assert g.place.p in (3, 5)


@pytest.mark.parametrize(
    "obj, path",
    [
        ([], "pair"),
        ({"place": "mars"}, "pair.place"),
        ({"place": 3, "gamma1": {"factors": [], "a": []}}, "pair.gamma1.factors"),
        ({"place": 3, "gamma1": {"factors": [{"d": 2}], "a": [[1]]}}, "pair.gamma1.a[0]"),
        ({"place": 3, "gamma1": {"factors": [{"d": 2}], "a": [[1, 0], [1, 0]]}}, "pair.gamma1.a"),
        ({"place": 3, "gamma1": {"factors": [{"field": 5}], "a": [[1, 0]]}}, "pair.gamma1.factors[0].field"),
    ],
)
def test_pair_input_errors(obj, path):
    with pytest.raises(InputError) as e:
        codec.pair(obj)
    assert e.value.path == path
