import random
from fractions import Fraction

import pytest

from qsigns import hecke, signs
from qsigns.arith import DirichletCharacter, is_squarefree, kronecker
from qsigns.forms import HalfIntegralForm
from qsigns.signs import (dprime_filter, first_negative,
                          first_nonzero_in_square_class, prop2_witnesses,
                          r_plus_fund, r_plus_tot, render_ratio, sign_changes,
                          squarefree_sign_survey, subseq_t_n2)


def artificial_form(values, weight_num=13, level=4):
    coeffs = [0] + list(values)
    return HalfIntegralForm(weight_num=weight_num, level=level,
                            character=DirichletCharacter.trivial(level),
                            coeffs=coeffs, prec=len(values))


class TestSignChanges:
    def test_known_values(self):
        assert sign_changes([1, -56, 120, -240, 9]) == (4, [2, 3, 4, 5])
        assert sign_changes([0, 0, 3, 0, 5]) == (0, [])

    def test_delta_prefix(self, delta3k):
        count, _ = sign_changes([delta3k.a(n) for n in range(1, 18)])
        assert count >= 5

    def test_zero_runs_bridge(self):
        assert sign_changes([1, 0, 0, -1, 0, -2, 0, 3]) == (2, [4, 8])


class TestFirstNegative:
    def test_forms(self, delta3k, g3k):
        assert first_negative(delta3k) == 4
        assert first_negative(g3k) == 4

    def test_absent(self):
        f = artificial_form([1, 0, 0, 1, 1, 0, 0, 1])
        assert first_negative(f) is None


class TestSubseq:
    def test_known_values(self, delta3k, g3k):
        assert subseq_t_n2(delta3k, 1, 4) == [1, -56, 9, -704]
        assert subseq_t_n2(delta3k, 5, 1) == [120]
        assert subseq_t_n2(g3k, 3, 3) == [1, -1, -1]

    def test_range_violation(self, delta3k):
        with pytest.raises(ValueError):
            subseq_t_n2(delta3k, 1, 55)    # 55^2 > 3000
        with pytest.raises(ValueError):
            subseq_t_n2(delta3k, 12, 2)    # 12 is not square-free


class TestRPlusTot:
    def test_delta_at_10(self, delta3k):
        rep = r_plus_tot(delta3k, 10)
        assert rep.ratio == Fraction(3, 5)
        assert (rep.n_pos, rep.n_neg, rep.n_zero_skipped) == (3, 2, 5)
        assert rep.ratio_rendered(3) == "0.600"

    def test_g_at_10(self, g3k):
        rep = r_plus_tot(g3k, 10)
        assert rep.ratio == Fraction(1, 2)
        assert rep.ratio_rendered(3) == "0.500"

    def test_ratio_consistency(self, delta3k):
        rep = r_plus_tot(delta3k, 1000)
        assert rep.ratio == Fraction(rep.n_pos, rep.n_pos + rep.n_neg)
        assert 0 <= rep.ratio <= 1
        assert rep.sign_change_count <= rep.n_pos + rep.n_neg - 1

    def test_order_independence_of_counts(self, delta3k):
        rep = r_plus_tot(delta3k, 500)
        idx = list(range(1, 501))
        random.Random(5).shuffle(idx)
        pos = sum(1 for n in idx if delta3k.a(n) > 0)
        neg = sum(1 for n in idx if delta3k.a(n) < 0)
        assert (pos, neg) == (rep.n_pos, rep.n_neg)

    def test_monotone_consistency(self, delta3k):
        small, large = r_plus_tot(delta3k, 300), r_plus_tot(delta3k, 900)
        pos_tail = sum(1 for n in range(301, 901) if delta3k.a(n) > 0)
        neg_tail = sum(1 for n in range(301, 901) if delta3k.a(n) < 0)
        assert large.n_pos == small.n_pos + pos_tail
        assert large.n_neg == small.n_neg + neg_tail
        assert large.change_positions[:small.sign_change_count] == \
            small.change_positions

    def test_zero_denominator_rejected(self):
        f = artificial_form([0, 0, 0, 0])
        with pytest.raises(ValueError):
            r_plus_tot(f, 4)


class TestRPlusFund:
    def test_delta_at_10(self, delta3k):
        # qualifying n: 1, 5, 8 (9 is not square-free, 4 = 4*1 is not
        # fundamental); positives are 1, 5
        rep = r_plus_fund(delta3k, 10)
        assert rep.ratio == Fraction(2, 3)
        assert rep.ratio_rendered(3) == "0.667"

    def test_g_at_10_documented_indexing(self, g3k):
        # k odd indexes by -n fundamental: n = 3 (+1) and n = 4 (-1)
        rep = r_plus_fund(g3k, 10)
        assert rep.ratio == Fraction(1, 2)

    def test_restriction_subset_of_tot(self, g3k):
        fund = r_plus_fund(g3k, 1000)
        tot = r_plus_tot(g3k, 1000)
        assert fund.n_pos + fund.n_neg <= tot.n_pos + tot.n_neg


class TestRenderRatio:
    def test_half_away_from_zero(self):
        assert render_ratio(Fraction(1, 8), 2) == "0.13"
        assert render_ratio(Fraction(1, 4), 1) == "0.3"
        assert render_ratio(Fraction(2, 3), 3) == "0.667"
        assert render_ratio(Fraction(1, 2), 0) == "1"
        assert render_ratio(Fraction(0), 6) == "0.000000"
        assert render_ratio(Fraction(501643, 1000000), 6) == "0.501643"


class TestDprimeFilter:
    def test_known_values(self):
        T = [1, 2, 3, 5, 6, 7, 10]
        assert dprime_filter(T, [3], [1]) == [1, 7, 10]
        assert dprime_filter(T, [], []) == T
        assert dprime_filter([3, 6], [3], [1]) == []

    def test_two_conditions(self):
        T = list(range(1, 50))
        got = dprime_filter(T, [3, 5], [1, -1])
        for t in got:
            assert kronecker(t, 3) == 1 and kronecker(t, 5) == -1

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            dprime_filter([1], [3, 3], [1, 1])


class TestSquarefreeSurvey:
    def test_delta_listed_entries(self, delta3k):
        hits = {t: first_nonzero_in_square_class(delta3k, t)
                for t in (1, 5, 13, 17)}
        assert hits[1] == (1, 1)
        assert hits[5] == (1, 120)
        assert hits[13] == (1, -1320)
        assert hits[17] == (1, -240)

    def test_g_listed_entries(self, g3k):
        assert first_nonzero_in_square_class(g3k, 3) == (1, 1)
        assert first_nonzero_in_square_class(g3k, 11) == (1, -1)
        assert first_nonzero_in_square_class(g3k, 15) == (1, 1)
        # t = 1: a(1) = 0, first nonzero in the class is a(4)
        assert first_nonzero_in_square_class(g3k, 1) == (2, -1)

    def test_survey_report(self, delta3k):
        rep = squarefree_sign_survey(delta3k, 20)
        assert rep.n_pos + rep.n_neg + rep.n_zero_skipped == \
            sum(1 for t in range(1, 21) if is_squarefree(t))
        assert rep.sign_change_count >= 1
        # change positions are t values, hence square-free
        assert all(is_squarefree(t) for t in rep.change_positions)


class TestProp2Empirical:
    def test_witnesses_exist(self, delta3k, g3k):
        for f in (delta3k, g3k):
            for p in (3, 5, 7):
                found = prop2_witnesses(f, p, 3000)
                assert all(n is not None for n in found.values()), (f, p)
                for (eps, s), n in found.items():
                    assert kronecker(n, p) == eps
                    assert (1 if f.a(n) > 0 else -1) == s

    def test_pinned_witnesses(self, delta3k):
        found = prop2_witnesses(delta3k, 3, 10_000)
        assert found[(-1, 1)] == 5     # a(5) = 120 > 0, (5/3) = -1
        assert found[(-1, -1)] == 8    # a(8) = -240 < 0, (8/3) = -1


class TestSignChangesBeyondPrecision:
    def test_power_sequence_changes_sign(self, delta3k):
        # along 9^m the sequence goes 1, 9, -174879, ...: a sign change
        # appears by m = 2, and the recurrence extension keeps it visible
        for p in (3, 5):
            seq = hecke.local_power_sequence_extended(delta3k, 1, p, 6)
            count, _ = sign_changes(seq)
            assert count >= 1, p
