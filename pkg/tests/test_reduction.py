import random
from chainforge.algorithms.reduction import dcore, dcore_relation, inflate_levels
from chainforge.poset import Poset, width
from conftest import both, random_items
from oracles import union_of_perfect_matchings


def _example():
    # p1 sits on all three levels, p5 on the lower two
    less = {("p5", "p2"), ("p5", "p3"), ("p6", "p2"), ("p6", "p3"), ("p6", "p4"),
            ("p7", "p2"), ("p7", "p3"), ("p7", "p4"),
            ("p6", "m1"), ("p7", "m1"), ("p6", "m2"), ("p7", "m2"),
            ("m1", "p2"), ("m1", "p3"), ("m2", "p3"), ("m2", "p4")}
    L = ["p1", "p5", "p6", "p7"]
    M = ["p1", "p5", "m1", "m2"]
    T = ["p1", "p2", "p3", "p4"]
    return L, M, T, lambda a, b: a == b or (a, b) in less


def test_inflation_example():
    L, M, T, leq = _example()
    Lb, Mb, Tb, e = inflate_levels(L, M, T, leq)
    assert e["lm"] == {(("L", "p1"), ("M", "p1")), (("L", "p5"), ("M", "p5"))} | {
        (("L", a), ("M", b)) for a in ("p6", "p7") for b in ("m1", "m2")}
    assert e["mt"] == {(("M", a), ("T", b)) for a, b in [
        ("p1", "p1"), ("p5", "p2"), ("p5", "p3"), ("m1", "p2"), ("m1", "p3"), ("m2", "p3"), ("m2", "p4")]}
    core = dcore(Lb, Mb, Tb, e)
    # p4 is reachable only from m2, so m2 < p3 lies on no perfect matching
    assert (("M", "m2"), ("T", "p3")) not in core["mt"]
    assert core["mt"] == union_of_perfect_matchings(Mb, Tb, e["mt"])
    assert _width_of(Lb + Mb + Tb, dcore_relation(core)) == 4


def test_disjoint_input_is_a_renaming():
    L, M, T = [0, 1], [2, 3], [4, 5]
    leq = lambda a, b: a == b or (a < 2 and b >= 2) or (a < 4 and b >= 4)
    Lb, Mb, Tb, e = inflate_levels(L, M, T, leq)
    assert [x for _, x in Lb + Mb + Tb] == L + M + T
    assert len(e["lm"]) == 4 and len(e["mt"]) == 4 and len(e["lt"]) == 4
    core = dcore(Lb, Mb, Tb, e)
    assert core == e


def _width_of(points, rel):
    p = Poset()
    order = {x: i for i, x in enumerate(points)}
    for x in points:
        p.add_point(order[x], [order[a] for a, b in rel if b == x])
    return width(p)


def _closed(points, rel):
    s = set(rel)
    return all((a, c) in s for a, b in s for b2, c in s if b == b2)


def test_random_towers():
    rng = random.Random(9)
    done = 0
    while done < 40:
        items = random_items(rng, rng.randint(4, 9), 0.3)
        p, b = both(items)
        mas = b.max_antichains()
        if b.width() > 3 or len(mas) < 2:
            continue
        chainable = [(A, B, C) for A in mas for B in mas for C in mas
                     if b.ac_leq(A, B) and b.ac_leq(B, C) and A != C]
        if not chainable:
            continue
        L, M, T = (sorted(x) for x in rng.choice(chainable))
        Lb, Mb, Tb, e = inflate_levels(L, M, T, b.leq)
        w = len(L)
        # inflated order (plus reflexive copies) keeps width w
        assert _width_of(Lb + Mb + Tb, set().union(*e.values())) == w
        core = dcore(Lb, Mb, Tb, e)
        for key, (A, B) in {"lm": (Lb, Mb), "mt": (Mb, Tb), "lt": (Lb, Tb)}.items():
            assert core[key] == union_of_perfect_matchings(A, B, e[key])
        rel = dcore_relation(core)
        assert _closed(Lb + Mb + Tb, rel)
        assert _width_of(Lb + Mb + Tb, rel) == w
        done += 1
