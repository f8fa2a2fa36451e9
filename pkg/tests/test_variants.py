import random

import pytest

from argforecast.acf import Acf, Vote
from argforecast.errors import GenerationError, UnsupportedShapeError
from argforecast.qbaf import Argument
from argforecast.stats import tally_alignment
from argforecast.variants import (
    BANDS,
    PROFILE_TOKENS,
    ComplexityProfile,
    VariantSpec,
    alignment_sample,
    classify,
    generate,
)

from .test_acf import example_debate


def simple_variant():
    """Three arguments; the forecaster agrees with the attacker and
    disagrees with the supporter."""
    return Acf(
        forecasting_args={Argument("f")},
        other_args={Argument("s"), Argument("a")},
        supports={("s", "f")},
        attacks={("a", "f")},
        forecasters={"u"},
        votes={("u", "a"): Vote.AGREE, ("u", "s"): Vote.DISAGREE},
        predictions={("u", "f"): 0.4},
    )


class TestClassify:
    def test_simple(self):
        profile = classify(simple_variant(), "u")
        assert profile == ComplexityProfile(simple=True)

    def test_breadth_and_vote(self):
        acf = simple_variant()
        acf.other_args.add(Argument("s2"))
        acf.supports.add(("s2", "f"))
        acf.votes[("u", "a")] = Vote.DISAGREE
        profile = classify(acf, "u")
        assert profile.breadth_complex and profile.vote_complex
        assert not profile.simple and not profile.depth_complex

    def test_depth_only(self):
        acf = simple_variant()
        acf.votes.clear()
        acf.other_args.add(Argument("g"))
        acf.supports.add(("g", "s"))
        profile = classify(acf, "u")
        assert profile == ComplexityProfile(depth_complex=True)

    def test_conflicting_votes(self):
        acf = simple_variant()
        acf.votes[("u", "s")] = Vote.AGREE  # agrees with both children
        assert classify(acf, "u").vote_complex

    def test_multiple_questions_rejected(self):
        acf = simple_variant()
        acf.forecasting_args.add(Argument("f2"))
        with pytest.raises(UnsupportedShapeError):
            classify(acf, "u")

    def test_unsure_undefined_stability(self):
        rng = random.Random(4)
        for token in PROFILE_TOKENS:
            acf, user = generate(VariantSpec("tennis", ComplexityProfile.from_token(token), "eq50"))
            before = classify(acf, user)
            # add unsure noise on some unvoted arguments
            for arg in acf.other_args:
                if (user, arg.id) not in acf.votes and rng.random() < 0.5:
                    acf.votes[(user, arg.id)] = Vote.UNSURE
            assert classify(acf, user) == before


class TestGenerate:
    def test_simple_above_band(self):
        acf, user = generate(VariantSpec("tennis", ComplexityProfile.from_token("s"), "gt50"))
        assert len(acf.other_args) == 2
        assert classify(acf, user).simple
        [p] = acf.predictions.values()
        assert 0.5 < p <= 1.0

    def test_round_trip_all_profiles_and_bands(self):
        for token in PROFILE_TOKENS:
            for band in BANDS:
                profile = ComplexityProfile.from_token(token)
                acf, user = generate(
                    VariantSpec("election", profile, band), rng=random.Random(17)
                )
                assert classify(acf, user) == profile
                [p] = acf.predictions.values()
                if band == "lt50":
                    assert p < 0.5
                elif band == "eq50":
                    assert p == 0.5
                else:
                    assert p > 0.5

    def test_compound_shape(self):
        acf, user = generate(VariantSpec("tennis", ComplexityProfile.from_token("vdb"), "eq50"))
        profile = classify(acf, user)
        assert profile.vote_complex and profile.depth_complex and profile.breadth_complex

    def test_simple_never_complex(self):
        for band in BANDS:
            acf, user = generate(VariantSpec("tennis", ComplexityProfile.from_token("s"), band))
            profile = classify(acf, user)
            assert profile.simple
            assert not (profile.vote_complex or profile.breadth_complex or profile.depth_complex)

    def test_unknown_question(self):
        with pytest.raises(GenerationError):
            generate(VariantSpec("nope", ComplexityProfile.from_token("s"), "eq50"))

    def test_seeded_generation_is_reproducible(self):
        spec = VariantSpec("tennis", ComplexityProfile.from_token("b"), "lt50")
        a1, _ = generate(spec, rng=random.Random(42))
        a2, _ = generate(spec, rng=random.Random(42))
        assert a1.predictions == a2.predictions


class TestAlignmentSample:
    def test_incoherent_debate_user_disagrees_with_model(self):
        assert alignment_sample(example_debate(), "u", user_says_coherent=True) == (False, True)

    def test_coherent_debate_user_agrees(self):
        acf = example_debate()
        acf.predictions[("u", "a")] = 0.2
        assert alignment_sample(acf, "u", user_says_coherent=True) == (True, True)

    def test_batch_reproduces_contingency_marginals(self):
        coherent = example_debate()
        coherent.predictions[("u", "a")] = 0.2
        incoherent = example_debate()
        samples = (
            [alignment_sample(coherent, "u", user_says_coherent=True)] * 44
            + [alignment_sample(coherent, "u", user_says_coherent=False)] * 12
            + [alignment_sample(incoherent, "u", user_says_coherent=True)] * 76
            + [alignment_sample(incoherent, "u", user_says_coherent=False)] * 52
        )
        table = tally_alignment(samples)
        assert (table.yy, table.yn, table.ny, table.nn) == (44, 12, 76, 52)
