"""Algebra laws and bitmask relation operations."""

import pytest

from qcnlearn.algebra import (
    Calculus,
    CalculusError,
    compose,
    intersect,
    inverse,
    load_calculus,
    validate,
)

CALCULI = ["ia", "rcc8", "point"]


@pytest.fixture(params=CALCULI)
def calc(request) -> Calculus:
    return load_calculus(request.param)


def test_widths():
    assert load_calculus("ia").p == 13
    assert load_calculus("rcc8").p == 8
    assert load_calculus("point").p == 3


def test_universal_mask(calc):
    assert calc.universal == (1 << calc.p) - 1
    assert calc.symbols(calc.universal) == [b.symbol for b in calc.basics]


def test_inverse_is_involution(calc):
    for r in range(1, min(1 << calc.p, 4096)):
        assert calc.inverse(calc.inverse(r)) == r


def test_identity_element(calc):
    ident = 1 << calc.identity_id
    for b in range(calc.p):
        assert calc.compose(ident, 1 << b) == 1 << b
        assert calc.compose(1 << b, ident) == 1 << b


def test_converse_composition_law(calc):
    # (a o b)^-1 == b^-1 o a^-1, the peircean law the validator enforces
    for j in range(calc.p):
        for k in range(calc.p):
            lhs = calc.inverse(calc.compose(1 << j, 1 << k))
            rhs = calc.compose(calc.inverse(1 << k), calc.inverse(1 << j))
            assert lhs == rhs, (calc.name, calc.symbol(j), calc.symbol(k))


def test_composition_distributes_over_union(calc):
    import random
    rng = random.Random(7)
    for _ in range(200):
        a = rng.randrange(1, calc.universal + 1)
        b = rng.randrange(1, calc.universal + 1)
        c = rng.randrange(1, calc.universal + 1)
        assert calc.compose(a | b, c) == calc.compose(a, c) | calc.compose(b, c)
        assert calc.compose(a, b | c) == calc.compose(a, b) | calc.compose(a, c)


def test_compose_bounded_equals_compose_and_intersect(calc):
    import random
    rng = random.Random(11)
    for _ in range(500):
        a = rng.randrange(0, calc.universal + 1)
        b = rng.randrange(0, calc.universal + 1)
        t = rng.randrange(0, calc.universal + 1)
        assert calc.compose_bounded(a, b, t) == calc.compose(a, b) & t


def test_universal_shortcuts(calc):
    u = calc.universal
    assert calc.compose(u, u) == u
    assert calc.compose(u, 0) == 0
    assert calc.compose(0, u) == 0


def test_symbol_roundtrip(calc):
    for b in calc.basics:
        assert calc.bit_id(b.symbol) == b.id
        assert calc.mask([b.symbol]) == 1 << b.id
    with pytest.raises(CalculusError):
        calc.bit_id("no-such-symbol")


def test_module_level_helpers():
    calc = load_calculus("point")
    lt = calc.mask(["<"])
    eq = calc.mask(["="])
    assert compose(calc, lt, lt) == lt
    assert inverse(calc, lt) == calc.mask([">"])
    assert intersect(lt | eq, eq) == eq


def test_point_table_exhaustive():
    calc = load_calculus("point")
    lt, eq, gt = calc.mask(["<"]), calc.mask(["="]), calc.mask([">"])
    assert calc.compose(lt, gt) == calc.universal
    assert calc.compose(gt, lt) == calc.universal
    assert calc.compose(lt, eq) == lt
    assert calc.compose(gt, gt) == gt


def test_ia_known_compositions():
    calc = load_calculus("ia")
    m = calc.mask
    # before o before = before; during o before = before
    assert calc.compose(m(["P"]), m(["P"])) == m(["P"])
    assert calc.compose(m(["D"]), m(["P"])) == m(["P"])
    # meets o meets = before
    assert calc.compose(m(["M"]), m(["M"])) == m(["P"])
    # starts o during = during
    assert calc.compose(m(["S"]), m(["D"])) == m(["D"])


def test_rcc8_known_compositions():
    calc = load_calculus("rcc8")
    m = calc.mask
    assert calc.compose(m(["NTPP"]), m(["NTPP"])) == m(["NTPP"])
    assert calc.compose(m(["EQ"]), m(["DC"])) == m(["DC"])
    assert calc.compose(m(["TPP"]), m(["NTPP"])) == m(["NTPP"])


def test_validate_rejects_broken_table():
    calc = load_calculus("point")
    bad_comp = list(list(row) for row in calc.comp)
    bad_comp[0][0] = calc.mask([">"])  # < o < is certainly not >
    broken = Calculus(name="broken", basics=calc.basics,
                      identity_id=calc.identity_id,
                      comp=tuple(tuple(r) for r in bad_comp))
    with pytest.raises(CalculusError):
        validate(broken)


def test_load_calculus_unknown_name():
    with pytest.raises(CalculusError):
        load_calculus("nonexistent-calculus")


def test_load_calculus_from_file(tmp_path):
    doc = {
        "name": "tiny-point",
        "identity": "=",
        "basics": [
            {"symbol": "<", "inverse": ">"},
            {"symbol": "=", "inverse": "="},
            {"symbol": ">", "inverse": "<"},
        ],
        "composition": [
            ["<", "<", "< = >"],
            ["<", "=", ">"],
            ["< = >", ">", ">"],
        ],
    }
    import json
    path = tmp_path / "tiny.json"
    path.write_text(json.dumps(doc))
    calc = load_calculus(str(path))
    assert calc.p == 3
    assert calc.compose(calc.mask(["<"]), calc.mask([">"])) == calc.universal


try:
    from hypothesis import given, strategies as st

    _ia = load_calculus("ia")

    @given(st.integers(0, _ia.universal), st.integers(0, _ia.universal))
    def test_inverse_distributes_over_union(a, b):
        assert _ia.inverse(a | b) == _ia.inverse(a) | _ia.inverse(b)

    @given(st.integers(0, _ia.universal), st.integers(0, _ia.universal),
           st.integers(0, _ia.universal))
    def test_compose_bounded_property(a, b, t):
        assert _ia.compose_bounded(a, b, t) == _ia.compose(a, b) & t
except ImportError:  # pragma: no cover - hypothesis is a test extra
    pass


def test_weight_orders_primitives():
    calc = load_calculus("ia")
    # equality composes to singletons everywhere; overlap rows are wide
    assert calc.weight(calc.bit_id("E")) < calc.weight(calc.bit_id("O"))
