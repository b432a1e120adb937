import pickle

import pytest

from conftest import SAMPLE_PERM, SAMPLE_WEIGHT, leq
from utils.errors import InvariantViolation, PreconditionError
from utils.perm_core import fireworks_permutations, max_weight_formula, parse_permutation
from utils.pipedream_engine import PipeDream, drop_fakes, trace
from utils.poly_algebra import grothendieck_pd, support
from utils.weight_raiser import (
    check_raise_completeness,
    check_raise_sweep,
    raise_to,
    raise_to_traced,
    raise_weight,
    reachable_support,
)

W132 = parse_permutation("132")


def _pd(n, *cells):
    return PipeDream.from_crosses(n, cells)


# ----- single raises -----
def test_raise_132_row1_moves_the_cross_up():
    Q, rt = raise_weight(_pd(3, (2, 1)), W132, 1, debug=True)
    assert Q == _pd(3, (1, 2))
    assert Q.weight() == (1, 0, 0)
    assert trace(Q).demazure == W132
    assert len(rt.steps) == 1
    step = rt.steps[0]
    assert step.case == 2
    assert step.tiles == {"T": (1, 1), "T'": (2, 1), "S": (1, 2), "S'": (2, 1)}
    assert step.pipes == {"i": 2, "l": 3, "m": 2}
    assert step.row_weight == 1


def test_raise_132_row2_adds_a_fake():
    Q, rt = raise_weight(_pd(3, (1, 2)), W132, 2, debug=True)
    assert Q == _pd(3, (1, 2), (2, 1))
    assert Q.weight() == (1, 1, 0)
    assert trace(Q).fake_crosses == {(2, 1)}
    assert [s.case for s in rt.steps] == [0]


def test_raise_trace_json():
    _, rt = raise_weight(_pd(3, (2, 1)), W132, 1, debug=True)
    data = rt.to_dict()
    assert data["perm"] == "132"
    assert data["row"] == 1
    assert data["start"] == {"n": 3, "crosses": [[2, 1]]}
    assert data["final"] == {"n": 3, "crosses": [[1, 2]]}
    assert data["final_weight"] == [1, 0, 0]
    assert data["steps"][0]["case"] == 2
    assert data["steps"][0]["tiles"]["S"] == [1, 2]
    assert data["steps"][0]["removed_fakes"] == []


# ----- preconditions -----
def test_raise_rejects_full_row():
    with pytest.raises(PreconditionError, match="maximal weight"):
        raise_weight(_pd(3, (2, 1)), W132, 3)
    with pytest.raises(PreconditionError):
        raise_weight(_pd(3, (1, 2), (2, 1)), W132, 1)


def test_raise_rejects_bad_inputs():
    with pytest.raises(PreconditionError):
        raise_weight(_pd(4, (1, 1), (2, 1), (2, 2)), parse_permutation("2413"), 1)
    with pytest.raises(PreconditionError, match="traces to"):
        raise_weight(PipeDream.empty(3), W132, 1)
    with pytest.raises(PreconditionError):
        raise_weight(_pd(4, (2, 1)), W132, 1)
    with pytest.raises(PreconditionError):
        raise_weight(_pd(3, (2, 1)), W132, 4)


def test_raise_to_preconditions():
    P = _pd(3, (2, 1))
    with pytest.raises(PreconditionError, match="below"):
        raise_to(P, W132, (1, 0, 0))
    with pytest.raises(PreconditionError, match="exceeds"):
        raise_to(P, W132, (1, 2, 0))
    with pytest.raises(PreconditionError):
        raise_to(P, W132, (1, 1))


# ----- raise_to -----
def test_raise_to_132():
    P = _pd(3, (2, 1))
    Q, traces = raise_to_traced(P, W132, (1, 1, 0), debug=True)
    assert Q == _pd(3, (1, 2), (2, 1))
    assert [rt.row for rt in traces] == [1, 2]
    assert raise_to(P, W132, (0, 1, 0)) == P


def test_raise_to_sample_weight(sample_dream):
    w = parse_permutation(SAMPLE_PERM)
    start = drop_fakes(sample_dream)
    assert leq(start.weight(), SAMPLE_WEIGHT)
    Q = raise_to(start, w, SAMPLE_WEIGHT, debug=True)
    tr = trace(Q)
    assert tr.demazure == w
    assert tr.weight == SAMPLE_WEIGHT


def test_raise_to_max_weight_from_every_reduced_dream():
    from utils.pipedream_engine import enumerate_pipe_dreams
    w = parse_permutation("31542")
    top = max_weight_formula(w)
    for P in enumerate_pipe_dreams(w):
        if not trace(P).reduced:
            continue
        Q = raise_to(P, w, top, debug=True)
        assert Q.weight() == top
        assert trace(Q).demazure == w


# ----- sweeps -----
def test_raise_sweep_s5_debug():
    raises = 0
    for w in fireworks_permutations(5):
        report = check_raise_sweep(w, debug=True)
        assert report.ok, report.note
        raises += int(report.note.split()[0])
    assert raises > 0


def test_raise_sweep_rejects_empty_enumeration(monkeypatch):
    monkeypatch.setattr("utils.weight_raiser.enumerate_pipe_dreams", lambda w: iter(()))
    with pytest.raises(InvariantViolation, match="empty"):
        check_raise_sweep(parse_permutation("31542"), debug=True)


def test_raise_sweep_note_counts_raises():
    report = check_raise_sweep(W132, debug=True)
    assert report.ok
    # {(2,1)} 可升第 1 行，{(1,2)} 可升第 2 行
    assert report.note == "2 raises"


def test_reachable_support_matches_enumeration_s4():
    for w in fireworks_permutations(4):
        assert reachable_support(w, debug=True) == support(grothendieck_pd(w))
        assert check_raise_completeness(w).ok


@pytest.mark.slow
def test_raise_completeness_s6():
    for w in fireworks_permutations(6):
        report = check_raise_completeness(w)
        assert report.ok, report.to_dict()


def test_debug_default_comes_from_settings(monkeypatch):
    monkeypatch.setenv("GROTHLAB_DEBUG", "1")
    from utils.settings import get_settings
    get_settings.cache_clear()
    _, rt = raise_weight(_pd(3, (2, 1)), W132, 1)
    assert rt.final == _pd(3, (1, 2))


# ----- errors -----
def test_invariant_violation_pickles_with_payload():
    _, rt = raise_weight(_pd(3, (2, 1)), W132, 1)
    err = InvariantViolation("row 1 weight went from 0 to 2", payload=rt.to_dict())
    back = pickle.loads(pickle.dumps(err))
    assert str(back) == "row 1 weight went from 0 to 2"
    assert back.payload == rt.to_dict()
