import random
from dataclasses import replace

from ocdf.analysis import (
    AbstractionLevel,
    detect_races,
    project,
    substructures,
)
from ocdf.model import (
    Feature,
    FeatureKind,
    Flow,
    FlowKind,
    OcdfClass,
    Visibility,
    build_class,
)

from generators import random_valid_class
from oracles import brute_components, brute_race_members


def member(fid, **kw):
    return Feature(id=fid, kind=FeatureKind.MEMBER, name=fid, decl="int", **kw)


def method(fid, **kw):
    kw.setdefault("visibility", Visibility.PRIVATE)
    return Feature(id=fid, kind=FeatureKind.METHOD, name=fid, **kw)


def iface(fid, **kw):
    return Feature(id=fid, kind=FeatureKind.INTERFACE_METHOD, name=fid,
                   visibility=Visibility.PUBLIC, **kw)


def edge_set(cls):
    return {(f.kind.value, f.source, f.target) for f in cls.flows}


MIXED = build_class(
    "C",
    [member("m"), method("f"), method("g")],
    [Flow(FlowKind.DATA, "m", "f"),
     Flow(FlowKind.CONTROL, "f", "g"),
     Flow(FlowKind.DATA, "f", "g")],
)


def test_l3_is_identity():
    assert project(MIXED, AbstractionLevel.L3) == MIXED


def test_l1_keeps_only_member_incident_data_flows():
    cls = project(MIXED, AbstractionLevel.L1)
    assert edge_set(cls) == {("data", "m", "f")}
    assert cls.features == MIXED.features


def test_l2_adds_control_flows():
    cls = project(MIXED, AbstractionLevel.L2)
    assert edge_set(cls) == {("data", "m", "f"), ("control", "f", "g")}


def test_projection_monotone_on_random_classes():
    rng = random.Random(4242)
    for _ in range(40):
        cls = random_valid_class(rng)
        l1 = project(cls, AbstractionLevel.L1)
        l2 = project(cls, AbstractionLevel.L2)
        l3 = project(cls, AbstractionLevel.L3)
        assert edge_set(l1) <= edge_set(l2) <= edge_set(l3)
        assert l1.features == l2.features == l3.features == cls.features
        assert l3 == cls


def test_two_disjoint_pairs():
    cls = build_class(
        "C",
        [member("a"), method("f"), member("b"), method("g")],
        [Flow(FlowKind.DATA, "a", "f"), Flow(FlowKind.DATA, "b", "g")],
    )
    report = substructures(cls)
    assert set(report.components) == {("a", "f"), ("b", "g")}


def test_fully_connected_is_one_component():
    cls = build_class(
        "C",
        [member("a"), method("f"), method("g")],
        [Flow(FlowKind.DATA, "a", "f"), Flow(FlowKind.CONTROL, "f", "g")],
    )
    assert len(substructures(cls).components) == 1


def test_singletons_form_singleton_components():
    cls = build_class("C", [member("a"), method("f")], [])
    assert set(substructures(cls).components) == {("a",), ("f",)}


def test_components_match_union_find_oracle_randomized():
    rng = random.Random(555)
    for _ in range(60):
        cls = random_valid_class(rng, max_features=12)
        got = {frozenset(c) for c in substructures(cls).components}
        assert got == brute_components(cls)


def test_components_partition_features():
    rng = random.Random(556)
    for _ in range(30):
        cls = random_valid_class(rng)
        components = substructures(cls).components
        ids = [i for c in components for i in c]
        assert sorted(ids) == sorted(f.id for f in cls.features)


def test_cut_suggestions_pair_nominally_related_components():
    cls = build_class(
        "C",
        [member("cache_size"), iface("cache_grow"),
         member("paint_color"), iface("paint_all"),
         iface("cache_trim")],
        [Flow(FlowKind.DATA, "cache_size", "cache_grow"),
         Flow(FlowKind.DATA, "paint_color", "paint_all"),
         Flow(FlowKind.DATA, "paint_color", "cache_trim")],
    )
    report = substructures(cls)
    assert len(report.components) == 2
    ((pair, count),) = report.cut_suggestions
    assert pair == (0, 1)
    # cache_size+cache_grow vs cache_trim share the "cache" token twice
    assert count == 2


def test_cut_suggestions_sorted_by_affinity():
    cls = build_class(
        "C",
        [member("load_a"), member("load_b"), member("load_c"),
         member("sync_x"), method("other")],
        [Flow(FlowKind.DATA, "load_a", "other"),
         Flow(FlowKind.DATA, "load_b", "other")],
    )
    report = substructures(cls)
    counts = [count for _, count in report.cut_suggestions]
    assert counts == sorted(counts, reverse=True)


# race detection

def test_const_member_never_races():
    cls = build_class(
        "C",
        [member("k", is_const=True), method("ctor", is_constructor=True),
         iface("a"), iface("b")],
        [Flow(FlowKind.DATA, "ctor", "k"),
         Flow(FlowKind.CONTROL, "a", "ctor"),
         Flow(FlowKind.CONTROL, "b", "ctor")],
    )
    assert detect_races(cls) == []
    assert brute_race_members(cls) == set()


def test_cross_entry_write_read_conflict():
    cls = build_class(
        "C",
        [member("x"), method("f"), method("g"), iface("A"), iface("B")],
        [Flow(FlowKind.DATA, "f", "x"),
         Flow(FlowKind.DATA, "x", "g"),
         Flow(FlowKind.CONTROL, "A", "f"),
         Flow(FlowKind.CONTROL, "B", "g")],
    )
    hazards = detect_races(cls)
    assert [h.member for h in hazards] == ["x"]
    assert hazards[0].writers == ("f",)
    assert hazards[0].readers == ("g",)
    assert hazards[0].entry_points == ("A", "B")
    assert brute_race_members(cls) == {"x"}


def test_same_entry_double_write_is_not_reported():
    cls = build_class(
        "C",
        [member("x"), method("f"), method("g"), iface("A")],
        [Flow(FlowKind.DATA, "f", "x"),
         Flow(FlowKind.DATA, "g", "x"),
         Flow(FlowKind.CONTROL, "A", "f"),
         Flow(FlowKind.CONTROL, "A", "g")],
    )
    assert detect_races(cls) == []
    assert brute_race_members(cls) == set()


def test_interface_methods_reach_themselves():
    # two public methods touching the same member conflict with no control flows
    cls = build_class(
        "C",
        [member("x"), iface("put"), iface("get")],
        [Flow(FlowKind.DATA, "put", "x"), Flow(FlowKind.DATA, "x", "get")],
    )
    hazards = detect_races(cls)
    assert [h.member for h in hazards] == ["x"]
    assert hazards[0].entry_points == ("get", "put")
    assert brute_race_members(cls) == {"x"}


def test_single_writer_single_entry_clean():
    cls = build_class(
        "C",
        [member("x"), iface("put")],
        [Flow(FlowKind.DATA, "put", "x")],
    )
    assert detect_races(cls) == []


def test_constructor_writes_do_not_count():
    cls = build_class(
        "C",
        [member("x"), iface("ctor", is_constructor=True), iface("get")],
        [Flow(FlowKind.DATA, "ctor", "x"), Flow(FlowKind.DATA, "x", "get")],
    )
    assert detect_races(cls) == []
    assert brute_race_members(cls) == set()


def test_all_const_members_yield_no_hazards():
    rng = random.Random(808)
    for _ in range(30):
        cls = random_valid_class(rng)
        frozen = OcdfClass(
            cls.name,
            tuple(replace(f, is_const=True) if f.kind is FeatureKind.MEMBER else f
                  for f in cls.features),
            cls.flows,
        )
        assert detect_races(frozen) == []


def test_races_match_oracle_randomized():
    rng = random.Random(909)
    for _ in range(60):
        cls = random_valid_class(rng)
        got = {h.member for h in detect_races(cls)}
        assert got == brute_race_members(cls)


def test_analyses_are_pure():
    rng = random.Random(31)
    cls = random_valid_class(rng)
    assert substructures(cls) == substructures(cls)
    assert detect_races(cls) == detect_races(cls)
    assert project(cls, AbstractionLevel.L1) == project(cls, AbstractionLevel.L1)
