import json
import math
import os
from pathlib import Path

import pytest

import citeforest as cf

DATA = Path(os.environ.get("CITEFOREST_TEST_DATA", Path(__file__).resolve().parent.parent / "data"))


@pytest.fixture
def mc4():
    return cf.parse_csv((DATA / "mc4.csv").read_text())


@pytest.fixture
def mc17():
    return cf.parse_csv((DATA / "mc17.csv").read_text())


def test_parse_and_graph(mc4):
    assert [r.id for r in mc4] == [1, 2, 3, 4]
    assert mc4[0].authors == ["W. E. Lorensen", "H. E. Cline"]
    g = cf.build_full_graph(mc4)
    assert (g.node_count, g.edge_count) == (4, 3)
    assert g.edges() == [(2, 1), (3, 1), (4, 1)]
    assert g.in_degree(1) == 3
    assert cf.roots(g) == [1]
    assert cf.check_acyclic(g) is None


def test_validation(mc4):
    report = cf.validate_corpus(mc4)
    assert report.loadable
    bad = cf.PaperRecord()
    bad.id, bad.doi, bad.title, bad.authors, bad.year, bad.refs = 9, "10.1/x", "X", ["A"], 1980, [1]
    report = cf.validate_corpus(mc4 + [bad])
    assert [d.code for d in report.errors] == ["TIME_ORDER"]
    with pytest.raises(cf.ValidationError):
        cf.build_full_graph(mc4 + [bad])


def test_parse_error_is_raised():
    with pytest.raises(cf.ParseError):
        cf.parse_csv("id,title\n1,x\n")


def test_csv_round_trip(mc4):
    assert cf.parse_csv(cf.serialize_csv(mc4)) == mc4


def test_simplify_selectors(mc17):
    g = cf.build_full_graph(mc17)
    assert g.edge_count == 43
    for kwargs in ({"selector": "tfidf"}, {"selector": "random", "seed": 3}, {"selector": "curated"}):
        forest = cf.simplify(mc17, g, **kwargs)
        assert forest.edge_count == 16
        assert forest.roots() == [1]
    with pytest.raises(cf.CiteforestError):
        cf.simplify(mc17, g, selector="random")
    paper5 = next(r for r in mc17 if r.id == 5)
    assert cf.select_main_random(paper5, g, 42) == 1


def test_levels_and_export(mc4):
    g = cf.build_full_graph(mc4)
    levels = cf.assign_levels_fixed(mc4, 5)
    assert levels.bounds == [(1987, 1991), (1992, 1996)]
    assert cf.check_edge_monotone(levels, g)
    forest = cf.simplify(mc4, g)
    doc = json.loads(cf.export_view(mc4, g, levels, forest))
    assert doc["view_kind"] == "simplified"
    node1 = next(n for n in doc["nodes"] if n["id"] == 1)
    assert abs(node1["size"] - (10 + 6 * math.sqrt(3))) <= 0.01
    dot = cf.export_view(mc4, g, levels, format="dot")
    assert dot.startswith("digraph citations {")
    assert dot.count("->") == 3


def test_query(mc4):
    g = cf.build_full_graph(mc4)
    forest = cf.simplify(mc4, g)
    assert cf.main_path(forest, 2) == [2, 1]
    assert cf.descendants(forest, 1) == [1, 2, 3, 4]
    assert [r.id for r in cf.search(mc4, "author", "lorensen")] == [1]
    assert cf.find_by_doi(mc4, "10.1145/37402.37422").id == 1
    assert cf.find_by_doi(mc4, "nope") is None
    assert cf.stats(mc4, g, forest) == {
        "node_count": 4,
        "full_edge_count": 3,
        "simplified_edge_count": 3,
        "level_count": 2,
        "root_count": 1,
    }


def test_curation(mc4):
    montani = mc4[1]
    case = cf.submit_suggestions(montani, mc4, [cf.ReferenceSuggestion(1, 1)])
    assert case.status == "submitted"
    case = cf.record_review(case, "r1", 1)
    case = cf.resolve_case(case)
    assert (case.status, case.final_ref) == ("resolved", 1)
    with pytest.raises(cf.CurationError):
        cf.record_review(case, "r2", 1)
    suggestions = [cf.ReferenceSuggestion(1, rank) for rank in range(1, 5)]
    with pytest.raises(cf.CurationError, match="at most 3"):
        cf.submit_suggestions(montani, mc4, suggestions)


def test_load_state_without_log():
    records, graph, cases = cf.load_state(DATA / "mc4.csv")
    assert len(records) == 4
    assert graph.edge_count == 3
    assert cases == {}
