"""End-to-end acceptance gate.

Each test covers one headline guarantee of the package and prints a
single PASS line on success, so a plain ``pytest -v tests/test_acceptance.py``
doubles as a checklist.  The oracles here are deliberately independent of
the implementation: verbatim table transcripts, hand-traced transcripts,
and brute-force enumeration.
"""

import itertools
import json
import time

import pytest

from prooftalk.cli import fixture_paths, main
from prooftalk.engine import (
    DialogueState,
    Move,
    MoveKind,
    Participant,
    Polarity,
    Role,
    apply_move,
    legal_moves,
    new_dialogue,
)
from prooftalk.markup import parse_document, serialize
from prooftalk.model import QualifierKind, render_reading
from prooftalk.typology import (
    AsymmetryDirection,
    DialogueType,
    InitialSituation,
    MainGoal,
    NoDispute,
    Outcome,
    ProofDialogueType,
    ProofStatusKind,
    SituationKind,
    Stance,
    UndefinedCell,
    assess_proof_status,
    classify_dialogue,
    classify_proof_dialogue,
    dialogue_profile,
    infer_initial_situation,
    proof_dialogue_row,
)


def _report(name):
    print(f"ACCEPTANCE: {name}: PASS")


class TestAcceptance:
    def test_dialogue_type_grid_fidelity(self):
        started = time.monotonic()
        expected = {
            (SituationKind.CONFLICT, MainGoal.STABLE_RESOLUTION):
                DialogueType.PERSUASION,
            (SituationKind.CONFLICT, MainGoal.PRACTICAL_SETTLEMENT):
                DialogueType.NEGOTIATION,
            (SituationKind.CONFLICT, MainGoal.PROVISIONAL_ACCOMMODATION):
                DialogueType.ERISTIC,
            (SituationKind.OPEN_PROBLEM, MainGoal.STABLE_RESOLUTION):
                DialogueType.INQUIRY,
            (SituationKind.OPEN_PROBLEM, MainGoal.PRACTICAL_SETTLEMENT):
                DialogueType.DELIBERATION,
            (SituationKind.INFO_ASYMMETRY, MainGoal.STABLE_RESOLUTION):
                DialogueType.INFORMATION_SEEKING,
        }
        situations = {
            SituationKind.CONFLICT: InitialSituation(SituationKind.CONFLICT),
            SituationKind.OPEN_PROBLEM:
                InitialSituation(SituationKind.OPEN_PROBLEM),
            SituationKind.INFO_ASYMMETRY: InitialSituation(
                SituationKind.INFO_ASYMMETRY,
                AsymmetryDirection.INTERLOCUTOR_LACKS),
        }
        defined, rejected = 0, 0
        for kind, goal in itertools.product(SituationKind, MainGoal):
            if (kind, goal) in expected:
                assert classify_dialogue(situations[kind], goal) \
                    is expected[(kind, goal)]
                defined += 1
            else:
                with pytest.raises(UndefinedCell):
                    classify_dialogue(situations[kind], goal)
                rejected += 1
        assert (defined, rejected) == (6, 3)
        assert time.monotonic() - started < 1.0
        _report("dialogue-type grid (6 defined cells, 3 rejected)")

    def test_dialogue_profiles_verbatim(self):
        expected = {
            DialogueType.PERSUASION: (
                "Difference of opinion", "Persuade other party",
                "Resolve difference of opinion", "Understand positions"),
            DialogueType.INQUIRY: (
                "Ignorance", "Contribute findings",
                "Prove or disprove conjecture", "Obtain knowledge"),
            DialogueType.DELIBERATION: (
                "Contemplation of future consequences",
                "Promote personal goals", "Act on a thoughtful basis",
                "Formulate personal priorities"),
            DialogueType.NEGOTIATION: (
                "Conflict of interest", "Maximize gains (self-interest)",
                "Settlement (without undue inequity)", "Harmony"),
            DialogueType.INFORMATION_SEEKING: (
                "One party lacks information", "Obtain information",
                "Transfer of knowledge", "Help in goal activity"),
            DialogueType.ERISTIC: (
                "Personal conflict",
                "Verbally hit out at and humiliate opponent",
                "Reveal deeper conflict", "Vent emotions"),
            DialogueType.DEBATE: (
                "Adversarial", "Persuade third party",
                "Air strongest arguments for both sides",
                "Spread information"),
            DialogueType.PEDAGOGICAL: (
                "Ignorance of one party", "Teaching and learning",
                "Transfer of knowledge", "Reserve transfer"),
        }
        for dialogue_type, row in expected.items():
            profile = dialogue_profile(dialogue_type)
            assert (profile.initial_situation_text,
                    profile.individual_goals_text,
                    profile.collective_goal_text,
                    profile.benefits_text) == row
        _report("dialogue profiles verbatim (8 rows)")

    def test_proof_dialogue_rows_fidelity(self):
        situations = [
            InitialSituation(SituationKind.OPEN_PROBLEM),
            InitialSituation(SituationKind.CONFLICT),
            InitialSituation(SituationKind.CONFLICT, irreconcilable=True),
            InitialSituation(SituationKind.INFO_ASYMMETRY,
                             AsymmetryDirection.INTERLOCUTOR_LACKS),
            InitialSituation(SituationKind.INFO_ASYMMETRY,
                             AsymmetryDirection.PROVER_LACKS),
        ]
        seen = []
        for situation in situations:
            for goal in MainGoal:
                try:
                    seen.append(classify_proof_dialogue(situation, goal))
                except UndefinedCell:
                    pass
        assert sorted(t.value for t in seen) \
            == sorted(t.value for t in ProofDialogueType)
        assert len(seen) == 7
        suspect = {t for t in ProofDialogueType if proof_dialogue_row(t).suspect}
        assert suspect == {ProofDialogueType.SUSPECT_INFO_SEEKING,
                           ProofDialogueType.SUSPECT_DELIBERATION,
                           ProofDialogueType.SUSPECT_NEGOTIATION,
                           ProofDialogueType.SUSPECT_ERISTIC}
        _report("proof-dialogue rows (7 total, 4 suspect)")

    def test_proof_status_rules_over_all_outcome_maps(self):
        started = time.monotonic()
        proofish = {ProofStatusKind.PROOF, ProofStatusKind.IDEAL_PROOF}
        types = list(ProofDialogueType)
        key_inq = ProofDialogueType.PROOF_AS_INQUIRY
        key_per = ProofDialogueType.PROOF_AS_PERSUASION
        key_ped = ProofDialogueType.PROOF_AS_PEDAGOGICAL
        for values in itertools.product(Outcome, repeat=len(types)):
            outcomes = dict(zip(types, values))
            variant = assess_proof_status(outcomes).variant
            if outcomes[key_per] is not Outcome.SUCCESS:
                assert variant not in proofish
            if outcomes[key_inq] is not Outcome.SUCCESS:
                assert variant not in proofish
            if (outcomes[key_inq] is Outcome.SUCCESS
                    and outcomes[key_per] is Outcome.SUCCESS):
                assert variant in proofish
            flipped_sides = set()
            for o in Outcome:
                alt = dict(outcomes)
                alt[key_ped] = o
                flipped_sides.add(assess_proof_status(alt).variant in proofish)
            assert len(flipped_sides) == 1
        assert time.monotonic() - started < 5.0
        _report("proof-status rules over all 3^7 outcome maps")

    def test_stance_inference_all_nine_pairs(self):
        cases = {
            (Stance.TRUE, Stance.TRUE): "agreement",
            (Stance.FALSE, Stance.FALSE): "agreement",
            (Stance.TRUE, Stance.FALSE): SituationKind.CONFLICT,
            (Stance.FALSE, Stance.TRUE): SituationKind.CONFLICT,
            (Stance.UNKNOWN, Stance.UNKNOWN): SituationKind.OPEN_PROBLEM,
            (Stance.TRUE, Stance.UNKNOWN): SituationKind.INFO_ASYMMETRY,
            (Stance.FALSE, Stance.UNKNOWN): SituationKind.INFO_ASYMMETRY,
            (Stance.UNKNOWN, Stance.TRUE): SituationKind.INFO_ASYMMETRY,
            (Stance.UNKNOWN, Stance.FALSE): SituationKind.INFO_ASYMMETRY,
        }
        for (a, b), want in cases.items():
            got = infer_initial_situation(a, b)
            if want == "agreement":
                assert isinstance(got, NoDispute)
            else:
                assert got.variant is want
        lacks = infer_initial_situation(Stance.TRUE, Stance.UNKNOWN)
        assert lacks.asymmetry_direction \
            is AsymmetryDirection.INTERLOCUTOR_LACKS
        lacks = infer_initial_situation(Stance.UNKNOWN, Stance.TRUE)
        assert lacks.asymmetry_direction is AsymmetryDirection.PROVER_LACKS
        _report("stance inference on all 9 pairs")

    def test_corpus_parses_validates_and_round_trips(self, corpus):
        assert len(corpus) == 7
        for name, (source, doc) in corpus.items():
            assert parse_document(serialize(doc)) == doc, name
            path = [p for p in fixture_paths()
                    if p.stem == name][0]
            assert main(["validate", str(path)]) == 0
        alcolea = corpus["four_colour_alcolea"][1].graph.arguments["alcolea"]
        assert len(alcolea.data) == 3
        assert alcolea.warrant and alcolea.backing and alcolea.claim
        alt = corpus["four_colour_alternative"][1] \
            .graph.arguments["alternative"]
        assert alt.qualifier.kind is QualifierKind.ALMOST_CERTAINLY
        assert len(alt.rebuttals) == 2
        _report("corpus: 7 fixtures parse, validate, round-trip")

    def test_engine_coherence_to_depth_four(self):
        started = time.monotonic()
        participants = (Participant("a", Role.PROVER, Stance.UNKNOWN),
                        Participant("b", Role.INTERLOCUTOR, Stance.UNKNOWN))
        props = ("p1", "p2")
        start = new_dialogue(DialogueType.INQUIRY, "p1", participants)

        def candidates(state: DialogueState, speaker: str):
            turn = len(state.history) + 1
            for kind in MoveKind:
                if kind is MoveKind.DECLARE_SHIFT:
                    subjects = (DialogueType.DELIBERATION,)
                else:
                    subjects = props
                for subject in subjects:
                    yield Move(turn, speaker, kind, subject)

        frontier, seen_keys = [start], set()
        checked = 0
        for _ in range(4):
            next_frontier = []
            for state in frontier:
                for speaker in ("a", "b"):
                    offered = set(legal_moves(state, speaker, set(props)))
                    accepted_kinds = set()
                    for move in candidates(state, speaker):
                        checked += 1
                        try:
                            new_state = apply_move(state, move)
                        except Exception:
                            continue
                        accepted_kinds.add(move.kind)
                        for store in new_state.stores:
                            by_prop = {}
                            for prop, pol in store.commitments:
                                by_prop.setdefault(prop, set()).add(pol)
                            assert all(len(v) == 1 for v in by_prop.values())
                        key = (new_state.phase, new_state.current_type,
                               tuple(sorted(
                                   (s.owner, tuple(sorted(s.commitments)))
                                   for s in new_state.stores)),
                               len(new_state.history))
                        if key not in seen_keys:
                            seen_keys.add(key)
                            next_frontier.append(new_state)
                    # a kind is offered iff some instance of it is accepted
                    assert offered == accepted_kinds, (state, speaker)
            frontier = next_frontier
        assert checked > 0
        assert time.monotonic() - started < 30.0
        _report(f"engine coherence to depth 4 ({checked} probes)")

    def test_shift_analysis_hand_traced(self, capsys):
        paths = {p.stem: p for p in fixture_paths()}
        assert main(["analyze", str(paths["shift_illicit"])]) == 0
        first = capsys.readouterr().out
        report = json.loads(first)
        entries = {e["dialogue_id"]: e for e in report["dialogues"]}

        drift = entries["drift"]
        assert [(s["start_turn"], s["end_turn"], s["type"], s["declared"])
                for s in drift["segments"]] == [
            (1, 3, "inquiry", False), (4, 7, "deliberation", False)]
        assert [(s["from"], s["to"], s["kind"], s["mode"], s["licitness"])
                for s in drift["shifts"]] == [
            ("inquiry", "deliberation", "gradual", "replacement", "illicit")]

        declared = entries["declared"]
        assert [s["declared"] for s in declared["segments"]] == [False, True]
        assert [(s["kind"], s["licitness"]) for s in declared["shifts"]] \
            == [("abrupt", "licit")]

        assert main(["analyze", str(paths["wiles_attempt"])]) == 0
        wiles = json.loads(capsys.readouterr().out)
        proof = wiles["proofs"][0]
        assert proof["status"] == "not_proof"
        assert proof["outcomes"] == {"proof_as_inquiry": "success",
                                     "proof_as_persuasion": "failure"}

        assert main(["analyze", str(paths["shift_illicit"])]) == 0
        assert capsys.readouterr().out == first  # byte-stable
        _report("shift analysis matches hand-traced transcripts")

    def test_reading_renderer_harry(self, harry_graph):
        text = render_reading(harry_graph.arguments["harry"], harry_graph)
        assert text == (
            "Given that Harry was born in Bermuda, we can presumably claim "
            "that he is British, since anyone born in Bermuda will generally "
            "be British (on account of various statutes and other legal "
            "provisions), unless he's a naturalized American, or his parents "
            "were aliens")
        _report("reading renderer reproduces the canonical sentence")
