import pytest

from irrseq import (FpPoly, SeqConfig, SeqTrace, TieBreak, build_sequence,
                    choose_factor, nu2)


class TestChooseFactor:
    def test_published_choices(self):
        p = 7
        g1, g2 = FpPoly("x^2+2", p), FpPoly("x^2+4", p)
        assert choose_factor(g1, g2, TieBreak.DESCENDING_LEX) == (g1, g2)
        a, b = FpPoly("x+3", p), FpPoly("x+5", p)  # x-4 and x-2
        assert choose_factor(b, a, TieBreak.DESCENDING_LEX) == (a, b)

    def test_positional_policies(self):
        p = 7
        g1, g2 = FpPoly("x^2+4", p), FpPoly("x^2+2", p)
        assert choose_factor(g1, g2, TieBreak.FIRST) == (g1, g2)
        assert choose_factor(g1, g2, TieBreak.SECOND) == (g2, g1)

    def test_compares_from_leading_coefficient_down(self):
        p = 7
        lo = FpPoly("x^2+3x+6", p)
        hi = FpPoly("x^2+4x+6", p)
        assert choose_factor(hi, lo, TieBreak.DESCENDING_LEX)[0] == lo

    def test_rejects_mismatched(self):
        with pytest.raises(ValueError):
            choose_factor(FpPoly("x+1", 7), FpPoly("x^2+1", 7),
                          TieBreak.DESCENDING_LEX)


class TestConfigValidation:
    def test_rejects_excluded_seeds(self):
        for bad in ["x+1", "x-1"]:
            with pytest.raises(ValueError):
                SeqConfig(p=7, f0=FpPoly(bad, 7), target_steps=3)

    def test_rejects_reducible_seed(self):
        with pytest.raises(ValueError):
            SeqConfig(p=7, f0=FpPoly("x^2+x+1", 7), target_steps=3)

    def test_rejects_bad_steps_and_modulus(self):
        with pytest.raises(ValueError):
            SeqConfig(p=7, f0=FpPoly.x(7), target_steps=0)
        with pytest.raises(ValueError):
            SeqConfig(p=9, f0=FpPoly.x(7), target_steps=1)
        with pytest.raises(ValueError):
            SeqConfig(p=5, f0=FpPoly.x(7), target_steps=1)


@pytest.fixture(scope="module")
def trace_from_x():
    return build_sequence(SeqConfig(p=7, f0=FpPoly.x(7), target_steps=5))


@pytest.fixture(scope="module")
def trace_backtrack():
    return build_sequence(SeqConfig(p=7, f0=FpPoly("x-3", 7), target_steps=5))


class TestWorkedRunFromX:
    @pytest.fixture
    def trace(self, trace_from_x):
        return trace_from_x

    def test_polynomials(self, trace):
        got = [str(f) for f in trace.polynomials()]
        assert got[:5] == ["x", "x^2+1", "x^2+2", "x^2+3x+6",
                           "x^4+6x^3+5x^2+6x+1"]
        assert trace.degrees() == [1, 2, 2, 2, 4, 8]

    def test_split_records_keep_both_factors(self, trace):
        s2 = trace.steps[1]
        assert s2.outcome == "split"
        assert set(map(str, s2.factors)) == {"x^2+2", "x^2+4"}
        assert str(s2.result_poly) == "x^2+2"
        s3 = trace.steps[2]
        assert set(map(str, s3.factors)) == {"x^2+3x+6", "x^2+4x+6"}
        assert str(s3.result_poly) == "x^2+3x+6"

    def test_summary_numbers(self, trace):
        assert (trace.e0, trace.e1) == (1, 4)
        assert (trace.s1, trace.s2) == (1, 3)
        assert trace.backtracked is False
        assert trace.discarded == ()
        assert trace.factorization_count == 2
        assert trace.factorization_bound == trace.e1 + 1

    def test_degree_invariants(self, trace):
        for rec in trace.steps:
            if rec.outcome == "split":
                assert rec.degree == rec.input_poly.degree
            else:
                assert rec.degree == 2 * rec.input_poly.degree


class TestWorkedRunWithBacktrack:
    @pytest.fixture
    def trace(self, trace_backtrack):
        return trace_backtrack

    def test_polynomials(self, trace):
        got = [str(f) for f in trace.polynomials()]
        assert got == ["x+4", "x+5", "x^2+3x+1", "x^2+x+3", "x^2+4x+5",
                       "x^4+x^3+x^2+x+1"]

    def test_backtracking_trail(self, trace):
        assert trace.backtracked is True
        assert [str(s.result_poly) for s in trace.discarded] == ["x+3", "x+2"]
        # the stalled attempt factored x^2+x+1 and then x^2+6x+1
        assert [str(s.r_poly) for s in trace.discarded] == ["x^2+x+1", "x^2+6x+1"]
        assert set(map(str, trace.discarded[1].factors)) == {"x+2", "x+4"}

    def test_restart_took_other_factor(self, trace):
        first, retry = trace.discarded[0], trace.steps[0]
        assert first.r_poly == retry.r_poly
        assert first.factors == retry.factors
        assert first.chosen != retry.chosen

    def test_summary_numbers(self, trace):
        assert (trace.e0, trace.e1, trace.s1, trace.s2) == (1, 4, 2, 3)
        assert trace.factorization_count == 5
        assert trace.factorization_bound == trace.e0 + trace.e1 + 1

    def test_all_members_irreducible(self, trace):
        for f in trace.polynomials():
            assert f.is_irreducible()


class TestMoreRuns:
    def test_p5_from_x(self):
        trace = build_sequence(SeqConfig(p=5, f0=FpPoly.x(5), target_steps=6))
        assert trace.e0 == nu2(4) == 2
        assert trace.e1 == nu2(24) == 3
        assert trace.s1 <= 3
        assert trace.s2 == 1
        for f in trace.polynomials():
            assert f.is_irreducible()

    def test_short_run_keeps_partial_segments(self):
        trace = build_sequence(SeqConfig(p=7, f0=FpPoly.x(7), target_steps=1))
        assert trace.degrees() == [1, 2]
        assert trace.s1 == 1

    def test_alternative_policies_shift_the_run(self):
        base = build_sequence(SeqConfig(p=7, f0=FpPoly.x(7), target_steps=4))
        alt = build_sequence(SeqConfig(p=7, f0=FpPoly.x(7), target_steps=4,
                                       tie_break=TieBreak.FIRST))
        assert base.degrees() == alt.degrees()
        assert [str(f) for f in base.polynomials()] != \
            [str(f) for f in alt.polynomials()]
        for f in alt.polynomials():
            assert f.is_irreducible()


class TestTraceSerialization:
    def test_roundtrip_identity(self):
        for seed, steps in [("x", 5), ("x-3", 5), ("x^2+1", 4)]:
            trace = build_sequence(SeqConfig(p=7, f0=FpPoly(seed, 7),
                                             target_steps=steps))
            again = SeqTrace.from_json(trace.to_json())
            assert again == trace

    def test_format_version_checked(self):
        trace = build_sequence(SeqConfig(p=7, f0=FpPoly.x(7), target_steps=2))
        doc = trace.to_json().replace('"format_version": 1', '"format_version": 99')
        with pytest.raises(ValueError):
            SeqTrace.from_json(doc)

    def test_determinism(self):
        cfg = SeqConfig(p=7, f0=FpPoly("x-3", 7), target_steps=5)
        assert build_sequence(cfg).to_json() == build_sequence(cfg).to_json()

    def test_json_fields(self):
        import json
        trace = build_sequence(SeqConfig(p=7, f0=FpPoly("x-3", 7), target_steps=3))
        doc = json.loads(trace.to_json())
        assert doc["format_version"] == 1
        assert doc["backtracked"] is True
        step = doc["steps"][0]
        assert set(step) == {"index", "input", "r_poly", "outcome", "factors",
                             "chosen", "degree"}
