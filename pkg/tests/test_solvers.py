import numpy as np
import pytest

from bkt import (
    NoWinningDraw,
    NotDeterministic,
    ParameterError,
    ScaleError,
    SolveRequest,
    best_draw,
    canonicalize,
    enumerate_delta_optimal,
    enumerate_draws,
    gen_bigsmall,
    gen_hard,
    gen_threetier,
    gen_unbalanced,
    most_robust_winning_draw,
    sensitivity,
    solve,
    validate_matrix,
    win_probabilities,
    winner,
)
from helpers import random_matrix


def all_even(size):
    return validate_matrix(np.full((size, size), 0.5) - 0.5 * np.eye(size))


# ---------------------------------------------------------- request validation


def test_request_rejects_unknown_problem():
    with pytest.raises(ParameterError):
        SolveRequest("XXX", gen_hard(2), 1)


def test_request_rejects_bad_player():
    with pytest.raises(ParameterError):
        SolveRequest("TFP", gen_hard(2), 0)
    with pytest.raises(ParameterError):
        SolveRequest("TFP", gen_hard(2), 5)


def test_request_problem_is_case_insensitive():
    req = SolveRequest("tfp", gen_hard(2), 1)
    assert req.problem == "TFP"


def test_fixture_problems_need_deterministic_matrices():
    with pytest.raises(NotDeterministic):
        SolveRequest("TFP", all_even(4), 1)
    with pytest.raises(NotDeterministic):
        SolveRequest("RTFP", all_even(4), 1, c=2.0)


def test_probabilistic_problems_need_q():
    with pytest.raises(ParameterError):
        SolveRequest("PTFP", all_even(4), 1)
    with pytest.raises(ParameterError):
        SolveRequest("PTFP", all_even(4), 1, q=1.5)
    with pytest.raises(ParameterError):
        SolveRequest("RPTFP", all_even(4), 1, q=0.5)  # missing s


def test_robust_problems_need_nonnegative_bounds():
    with pytest.raises(ParameterError):
        SolveRequest("RTFP", gen_hard(2), 1)
    with pytest.raises(ParameterError):
        SolveRequest("RTFP", gen_hard(2), 1, c=-1.0)
    with pytest.raises(ParameterError):
        SolveRequest("RPTFP", all_even(4), 1, q=0.5, s=-0.5)


def test_request_rejects_unknown_mode():
    with pytest.raises(ParameterError):
        SolveRequest("TFP", gen_hard(2), 1, mode="quantum")


# ------------------------------------------------------------------ exact TFP


def test_tfp_hard_family_favors_player_one():
    for n in (1, 2, 3):
        res = solve(SolveRequest("TFP", gen_hard(n), 1))
        assert res.verdict == "yes"
        assert res.exact
        assert res.wp == 1.0
        assert res.witness.leaves == tuple(range(1, (1 << n) + 1))
        # the winning draw is lexicographically first, found immediately
        assert res.draws_examined == 1


def test_tfp_no_answer_scans_everything():
    res = solve(SolveRequest("TFP", gen_hard(2), 2))
    assert res.verdict == "no"
    assert res.witness is None
    assert res.draws_examined == 3
    res = solve(SolveRequest("TFP", gen_hard(3), 2))
    assert res.verdict == "no"
    assert res.draws_examined == 315


def test_tfp_witness_is_replayable():
    res = solve(SolveRequest("TFP", gen_unbalanced(3), 1))
    assert res.verdict == "yes"
    assert winner(gen_unbalanced(3), res.witness) == 1


# ----------------------------------------------------------------- exact PTFP


def test_ptfp_threshold_cases():
    m = all_even(4)
    yes = solve(SolveRequest("PTFP", m, 1, q=0.25))
    assert yes.verdict == "yes"
    assert yes.witness.leaves == (1, 2, 3, 4)
    assert yes.wp == pytest.approx(0.25)
    no = solve(SolveRequest("PTFP", m, 1, q=0.3))
    assert no.verdict == "no"


def test_ptfp_accepts_probabilistic_verdicts():
    rng = np.random.default_rng(2)
    m = random_matrix(rng, 8)
    ident = tuple(range(1, 9))
    base = float(win_probabilities(m, ident)[0])
    res = solve(SolveRequest("PTFP", m, 1, q=base))
    assert res.verdict == "yes"
    assert res.wp >= base - 1e-9


# ----------------------------------------------------------------- exact RTFP


def test_rtfp_unbalanced_frozen_cases():
    m = gen_unbalanced(3)
    res = solve(SolveRequest("RTFP", m, 1, c=3.0))
    assert res.verdict == "yes"
    assert res.witness.leaves == (1, 2, 3, 5, 4, 6, 7, 8)
    assert res.drop_coefficient == 3.0
    assert res.draws_examined == 4  # lex position of the witness

    res = solve(SolveRequest("RTFP", m, 1, c=2.0))
    assert res.verdict == "no"
    assert res.draws_examined == 315

    res = solve(SolveRequest("RTFP", m, 1, c=4.0))
    assert res.verdict == "yes"
    assert res.witness.leaves == tuple(range(1, 9))
    assert res.draws_examined == 1


def test_rtfp_witness_meets_both_conditions():
    m = gen_unbalanced(3)
    res = solve(SolveRequest("RTFP", m, 1, c=3.0))
    assert winner(m, res.witness) == 1
    assert sensitivity(m, res.witness, 1).drop_coefficient <= 3.0


# ---------------------------------------------------------------- exact RPTFP


def test_rptfp_threetier_cases():
    t = gen_threetier(2, 0.02)
    res = solve(SolveRequest("RPTFP", t, 1, q=0.502, s=2.21))
    assert res.verdict == "yes"
    assert res.witness.leaves == tuple(range(1, 9))
    assert res.wp == pytest.approx(0.502)
    assert res.drop_coefficient == pytest.approx(2.204)

    assert solve(SolveRequest("RPTFP", t, 1, q=0.503, s=10.0)).verdict == "no"
    assert solve(SolveRequest("RPTFP", t, 1, q=0.5029, s=2.21)).verdict == "no"


# ------------------------------------------------------------------- parallel


def test_parallel_scan_matches_serial():
    m = gen_unbalanced(3)
    serial = solve(SolveRequest("RTFP", m, 1, c=3.0))
    parallel = solve(SolveRequest("RTFP", m, 1, c=3.0), jobs=4)
    assert parallel.verdict == "yes"
    assert parallel.witness.leaves == serial.witness.leaves
    # the parallel scan always covers the whole space
    assert parallel.draws_examined == 315

    no = solve(SolveRequest("RTFP", m, 1, c=2.0), jobs=2)
    assert no.verdict == "no"
    assert no.draws_examined == 315


# ------------------------------------------------------------------ heuristic


def test_heuristic_finds_hard_family_witness():
    for n in (3, 4):
        res = solve(SolveRequest("TFP", gen_hard(n), 1, mode="heuristic"),
                    restarts=3, seed=0)
        assert res.verdict == "found"
        assert not res.exact
        assert winner(gen_hard(n), res.witness) == 1


def test_heuristic_never_claims_no():
    res = solve(SolveRequest("TFP", gen_hard(4), 2, mode="heuristic"),
                restarts=3, seed=0)
    assert res.verdict == "not-found"
    assert res.witness is None
    assert not res.exact


def test_heuristic_witness_meets_conditions():
    m = gen_unbalanced(4)
    res = solve(SolveRequest("RTFP", m, 1, c=6.0, mode="heuristic"),
                restarts=5, seed=2)
    assert res.verdict == "found"
    assert winner(m, res.witness) == 1
    assert sensitivity(m, res.witness, 1).drop_coefficient <= 6.0
    assert res.drop_coefficient <= 6.0


def test_heuristic_counts_unique_evaluations():
    res = solve(SolveRequest("TFP", gen_hard(3), 1, mode="heuristic"),
                restarts=2, seed=0)
    assert res.draws_examined >= 1


def test_heuristic_is_deterministic_for_a_seed():
    m = gen_unbalanced(4)
    a = solve(SolveRequest("RTFP", m, 1, c=6.0, mode="heuristic"),
              restarts=4, seed=9)
    b = solve(SolveRequest("RTFP", m, 1, c=6.0, mode="heuristic"),
              restarts=4, seed=9)
    assert a.witness.leaves == b.witness.leaves
    assert a.draws_examined == b.draws_examined


# ----------------------------------------------------------------- auto mode


def test_auto_mode_picks_exact_for_small_instances():
    res = solve(SolveRequest("TFP", gen_hard(3), 1))
    assert res.exact


def test_auto_mode_falls_back_to_heuristic():
    rng = np.random.default_rng(5)
    m = random_matrix(rng, 16, interior=True)
    q = float(win_probabilities(m, tuple(range(1, 17)))[0]) + 0.05
    res = solve(SolveRequest("PTFP", m, 1, q=q))
    assert not res.exact
    assert res.verdict == "found"
    assert res.wp >= q - 1e-9


def test_exact_mode_refuses_large_instances():
    with pytest.raises(ScaleError):
        solve(SolveRequest("TFP", gen_hard(4), 1, mode="exact"))


# ------------------------------------------------------------------ best_draw


def test_best_draw_examples():
    d, wp = best_draw(gen_hard(2), 1)
    assert d.leaves == (1, 2, 3, 4)
    assert wp == 1.0

    d, wp = best_draw(all_even(4), 1)
    assert d.leaves == (1, 2, 3, 4)
    assert wp == pytest.approx(0.25)

    d, wp = best_draw(gen_bigsmall(2, 0.6).matrix, 3)
    assert d.leaves == (1, 3, 2, 4)
    assert wp == pytest.approx(0.324)


def test_best_draw_scale_guard():
    with pytest.raises(ScaleError):
        best_draw(gen_hard(4), 1)


def test_best_draw_is_the_argmax():
    rng = np.random.default_rng(31)
    m = random_matrix(rng, 8)
    d, wp = best_draw(m, 4)
    values = [float(win_probabilities(m, dd)[3]) for dd in enumerate_draws(3)]
    assert wp == pytest.approx(max(values), abs=1e-12)


# ----------------------------------------------------- delta-optimal frontier


def test_delta_optimal_unbalanced_frozen():
    ents = enumerate_delta_optimal(gen_unbalanced(3), 1, 0.0)
    assert len(ents) == 255
    assert ents[0].draw.leaves == (1, 2, 3, 5, 4, 6, 7, 8)
    assert ents[0].drop_coefficient == 3.0
    assert all(e.wp == 1.0 for e in ents)
    coeffs = [e.drop_coefficient for e in ents]
    assert coeffs == sorted(coeffs)
    assert min(coeffs) == 3.0
    assert max(coeffs) == 4.0


def test_delta_optimal_wide_tolerance_keeps_everything():
    ents = enumerate_delta_optimal(all_even(4), 1, 1.0)
    assert len(ents) == 3


def test_delta_optimal_zero_on_unique_optimum():
    ents = enumerate_delta_optimal(gen_hard(3), 1, 0.0)
    assert len(ents) == 1
    assert ents[0].draw.leaves == tuple(range(1, 9))
    assert ents[0].drop_coefficient == 7.0


def test_delta_optimal_rejects_negative_delta():
    with pytest.raises(ParameterError):
        enumerate_delta_optimal(gen_hard(2), 1, -0.1)


# --------------------------------------------------- most robust winning draw


def test_most_robust_examples():
    e = most_robust_winning_draw(gen_unbalanced(3), 1)
    assert e.draw.leaves == (1, 2, 3, 5, 4, 6, 7, 8)
    assert e.drop_coefficient == 3.0

    e = most_robust_winning_draw(gen_hard(3), 1)
    assert e.draw.leaves == tuple(range(1, 9))
    assert e.drop_coefficient == 7.0


def test_widening_the_tolerance_can_lower_the_coefficient():
    # at the 8-player three-tier instance, trading one part in a thousand of
    # winning probability buys a strictly sturdier draw
    t = gen_threetier(2, 0.02)
    tight = most_robust_winning_draw(t, 1, 0.0)
    loose = most_robust_winning_draw(t, 1, 0.001)
    assert tight.draw.leaves == (1, 2, 3, 4, 5, 7, 6, 8)
    assert tight.wp == pytest.approx(0.5029996)
    assert tight.drop_coefficient == pytest.approx(2.3058792)
    assert loose.draw.leaves == tuple(range(1, 9))
    assert loose.wp == pytest.approx(0.502)
    assert loose.drop_coefficient == pytest.approx(2.204)
    assert loose.drop_coefficient < tight.drop_coefficient


def test_require_win_raises_without_sure_winner():
    with pytest.raises(NoWinningDraw):
        most_robust_winning_draw(all_even(4), 1, require_win=True)
    e = most_robust_winning_draw(gen_unbalanced(3), 1, require_win=True)
    assert e.wp == 1.0


# -------------------------------------------------------------- serialization


def test_solve_result_serialization():
    d = solve(SolveRequest("TFP", gen_hard(2), 1)).to_json_dict()
    assert d == {
        "answer": "yes",
        "witness": [1, 2, 3, 4],
        "wp": 1.0,
        "drop_coefficient": None,
        "draws_examined": 1,
        "exact": True,
    }
    d = solve(SolveRequest("TFP", gen_hard(2), 2)).to_json_dict()
    assert d["answer"] == "no"
    assert d["witness"] is None


def test_heuristic_found_matches_exact_when_both_apply():
    # whenever the heuristic reports found, the exact answer must be yes
    rng = np.random.default_rng(14)
    for _ in range(5):
        m = random_matrix(rng, 8)
        base = float(win_probabilities(m, tuple(range(1, 9)))[0])
        req_h = SolveRequest("PTFP", m, 1, q=base, mode="heuristic")
        req_e = SolveRequest("PTFP", m, 1, q=base, mode="exact")
        h = solve(req_h, restarts=2, seed=1)
        if h.verdict == "found":
            assert solve(req_e).verdict == "yes"
