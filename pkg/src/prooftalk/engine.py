"""Dialogue replay engine.

Replays move sequences under per-type protocol rules, maintaining one
commitment store per participant.  States are immutable; apply_move
returns a fresh state.  Two-participant dialogues only.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Union

from .typology import (
    DialogueType,
    InitialSituation,
    NoDispute,
    SITUATION_OF_TYPE,
    SituationKind,
    Stance,
    infer_initial_situation,
)

# Turns a challenged party has to produce a supporting assertion before
# the challenge counts as unanswered.
ANSWER_WINDOW = 2


class Role(str, Enum):
    PROVER = "prover"
    INTERLOCUTOR = "interlocutor"
    NEUTRAL = "neutral"


@dataclass(frozen=True)
class Participant:
    id: str
    role: Role
    initial_stance: Stance


class MoveKind(str, Enum):
    ASSERT = "assert"
    CHALLENGE = "challenge"
    QUESTION = "question"
    CONCEDE = "concede"
    RETRACT = "retract"
    OFFER = "offer"          # propose a settlement; bargaining dialogues only
    THREAT = "threat"        # negotiation only
    DECLARE_SHIFT = "declare_shift"
    CLOSE = "close"


@dataclass(frozen=True)
class Move:
    turn: int
    speaker: str
    kind: MoveKind
    subject: Union[str, DialogueType]


class Polarity(str, Enum):
    AFFIRMED = "affirmed"
    DENIED = "denied"


@dataclass(frozen=True)
class CommitmentStore:
    owner: str
    commitments: frozenset[tuple[str, Polarity]] = frozenset()

    def polarity_of(self, prop: str) -> Optional[Polarity]:
        for p, pol in self.commitments:
            if p == prop:
                return pol
        return None

    def with_commitment(self, prop: str, polarity: Polarity) -> CommitmentStore:
        return CommitmentStore(self.owner, self.commitments | {(prop, polarity)})

    def without(self, prop: str) -> CommitmentStore:
        return CommitmentStore(
            self.owner,
            frozenset(c for c in self.commitments if c[0] != prop))


class Phase(str, Enum):
    OPEN = "open"
    CLOSED = "closed"


@dataclass(frozen=True)
class DialogueState:
    declared_type: DialogueType
    crucial_proposition: str
    participants: tuple[Participant, ...]
    stores: tuple[CommitmentStore, ...]
    history: tuple[Move, ...] = ()
    phase: Phase = Phase.OPEN
    current_type: DialogueType = None  # operative type; shifts update it
    settlement: Optional[str] = None

    def __post_init__(self):
        if self.current_type is None:
            object.__setattr__(self, "current_type", self.declared_type)

    def store_of(self, participant: str) -> CommitmentStore:
        for s in self.stores:
            if s.owner == participant:
                return s
        raise KeyError(f"unknown participant '{participant}'")

    def participant(self, pid: str) -> Participant:
        for p in self.participants:
            if p.id == pid:
                return p
        raise KeyError(f"unknown participant '{pid}'")


class StanceMismatch(Exception):
    """Initial stances do not give rise to the declared dialogue type."""


class ProtocolViolation(Exception):
    def __init__(self, rule: str, message: str, turn: Optional[int] = None):
        super().__init__(message)
        self.rule = rule
        self.turn = turn


def new_dialogue(dialogue_type: DialogueType, crucial: str,
                 participants: tuple[Participant, ...],
                 settlement: Optional[str] = None) -> DialogueState:
    """Open a dialogue, seeding stores from initial stances.

    A committed stance seeds the store with the crucial proposition
    (true -> affirmed, false -> denied); ignorance seeds nothing.  The
    stances' inferred initial situation must match the declared type's
    survey column.
    """
    if len(participants) != 2:
        raise ValueError("exactly two participants are supported")
    if len({p.id for p in participants}) != 2:
        raise ValueError("participant ids must be unique")

    situation = infer_initial_situation(
        participants[0].initial_stance, participants[1].initial_stance)
    required = SITUATION_OF_TYPE[dialogue_type]
    if isinstance(situation, NoDispute) or situation.variant is not required:
        found = ("no dispute" if isinstance(situation, NoDispute)
                 else situation.variant.value)
        raise StanceMismatch(
            f"{dialogue_type.value} requires {required.value}; stances give {found}")

    stores = []
    for p in participants:
        store = CommitmentStore(p.id)
        if p.initial_stance is Stance.TRUE:
            store = store.with_commitment(crucial, Polarity.AFFIRMED)
        elif p.initial_stance is Stance.FALSE:
            store = store.with_commitment(crucial, Polarity.DENIED)
        stores.append(store)
    return DialogueState(
        declared_type=dialogue_type,
        crucial_proposition=crucial,
        participants=tuple(participants),
        stores=tuple(stores),
        settlement=settlement,
    )


def kind_allowed(kind: MoveKind, dialogue_type: DialogueType) -> bool:
    """State-independent part of the legality matrix."""
    if kind is MoveKind.RETRACT:
        return dialogue_type is not DialogueType.INQUIRY
    if kind is MoveKind.OFFER:
        return dialogue_type in (DialogueType.DELIBERATION,
                                 DialogueType.NEGOTIATION)
    if kind is MoveKind.THREAT:
        return dialogue_type is DialogueType.NEGOTIATION
    return True


def _kind_rule_id(kind: MoveKind, dialogue_type: DialogueType) -> str:
    if kind is MoveKind.RETRACT:
        return f"retract-forbidden-in-{dialogue_type.value}"
    if kind is MoveKind.THREAT:
        return "threat-move-outside-negotiation"
    return f"{kind.value}-move-outside-settlement-dialogue"


def _check_move(state: DialogueState, move: Move) -> None:
    """Raise ProtocolViolation when the move is illegal in the state."""
    if state.phase is Phase.CLOSED:
        raise ProtocolViolation("dialogue-closed",
                                "no moves after close", move.turn)
    expected = (state.history[-1].turn + 1) if state.history else 1
    if move.turn != expected:
        raise ProtocolViolation(
            "turn-out-of-order",
            f"expected turn {expected}, got {move.turn}", move.turn)
    if all(p.id != move.speaker for p in state.participants):
        raise ProtocolViolation("unknown-speaker",
                                f"no participant '{move.speaker}'", move.turn)

    if move.kind is MoveKind.DECLARE_SHIFT:
        if not isinstance(move.subject, DialogueType):
            raise ProtocolViolation(
                "shift-target-not-a-type",
                "declare_shift subject must be a dialogue type", move.turn)
        return
    if not isinstance(move.subject, str):
        raise ProtocolViolation(
            "subject-not-a-proposition",
            f"{move.kind.value} subject must be a proposition id", move.turn)

    if not kind_allowed(move.kind, state.current_type):
        raise ProtocolViolation(
            _kind_rule_id(move.kind, state.current_type),
            f"{move.kind.value} is not a {state.current_type.value} move",
            move.turn)

    own = state.store_of(move.speaker)
    others = [s for s in state.stores if s.owner != move.speaker]

    if move.kind is MoveKind.ASSERT:
        if own.polarity_of(move.subject) is Polarity.DENIED:
            raise ProtocolViolation(
                "conflicting-commitment",
                f"'{move.speaker}' has denied '{move.subject}'; retract first",
                move.turn)
    elif move.kind is MoveKind.CHALLENGE:
        if own.polarity_of(move.subject) is Polarity.AFFIRMED:
            raise ProtocolViolation(
                "challenge-own-assertion",
                f"'{move.speaker}' cannot challenge their own commitment to "
                f"'{move.subject}'", move.turn)
        if all(s.polarity_of(move.subject) is None for s in others):
            raise ProtocolViolation(
                "challenge-uncommitted",
                f"no other participant is committed to '{move.subject}'",
                move.turn)
    elif move.kind is MoveKind.CONCEDE:
        if all(s.polarity_of(move.subject) is not Polarity.AFFIRMED
               for s in others):
            raise ProtocolViolation(
                "concede-unasserted",
                f"no other participant has affirmed '{move.subject}'",
                move.turn)
    elif move.kind is MoveKind.RETRACT:
        if own.polarity_of(move.subject) is None:
            raise ProtocolViolation(
                "retract-without-commitment",
                f"'{move.speaker}' has no commitment to '{move.subject}'",
                move.turn)


def apply_move(state: DialogueState, move: Move) -> DialogueState:
    """Pure transition: validate the move and return the successor state."""
    _check_move(state, move)
    history = state.history + (move,)

    if move.kind is MoveKind.CLOSE:
        return replace(state, history=history, phase=Phase.CLOSED)
    if move.kind is MoveKind.DECLARE_SHIFT:
        return replace(state, history=history, current_type=move.subject)

    stores = list(state.stores)
    idx = next(i for i, s in enumerate(stores) if s.owner == move.speaker)
    if move.kind is MoveKind.ASSERT:
        stores[idx] = stores[idx].with_commitment(move.subject, Polarity.AFFIRMED)
    elif move.kind is MoveKind.CONCEDE:
        # Conceding withdraws a standing denial: the speaker gives in.
        stores[idx] = stores[idx].without(move.subject).with_commitment(
            move.subject, Polarity.AFFIRMED)
    elif move.kind is MoveKind.RETRACT:
        stores[idx] = stores[idx].without(move.subject)
    # challenge/question/offer/threat leave stores unchanged
    return replace(state, history=history, stores=tuple(stores))


def legal_moves(state: DialogueState, speaker: str,
                propositions: Optional[set[str]] = None) -> list[MoveKind]:
    """Move kinds with at least one acceptable instance for the speaker.

    Probes apply_move over the given proposition universe (defaulting to
    propositions mentioned so far plus a fresh one, which covers kinds
    whose legality does not depend on prior commitments).
    """
    if state.phase is Phase.CLOSED:
        return []
    if propositions is None:
        propositions = {state.crucial_proposition}
        if state.settlement:
            propositions.add(state.settlement)
        for s in state.stores:
            propositions.update(p for p, _ in s.commitments)
        for m in state.history:
            if isinstance(m.subject, str):
                propositions.add(m.subject)
        propositions.add("_fresh")
    turn = (state.history[-1].turn + 1) if state.history else 1

    kinds = []
    for kind in MoveKind:
        subjects = ([DialogueType.DELIBERATION] if kind is MoveKind.DECLARE_SHIFT
                    else sorted(propositions))
        for subject in subjects:
            try:
                _check_move(state, Move(turn, speaker, kind, subject))
            except ProtocolViolation:
                continue
            kinds.append(kind)
            break
    return kinds


@dataclass(frozen=True)
class GoalVerdict:
    achieved: bool
    reason: str


def _unanswered_challenge(state: DialogueState) -> Optional[str]:
    """Subject of the first challenge left unanswered, if any.

    The challenged party (the other participant, in a two-party
    dialogue) must produce an assertion within their next ANSWER_WINDOW
    turns; a challenge with no such answer counts as unanswered.
    """
    for i, move in enumerate(state.history):
        if move.kind is not MoveKind.CHALLENGE:
            continue
        responses = [m for m in state.history[i + 1:]
                     if m.speaker != move.speaker][:ANSWER_WINDOW]
        if not any(m.kind is MoveKind.ASSERT for m in responses):
            return move.subject
    return None


def goal_achieved(state: DialogueState) -> GoalVerdict:
    """Test the collective goal of the declared dialogue type."""
    crucial = state.crucial_proposition
    polarities = {p.id: state.store_of(p.id).polarity_of(crucial)
                  for p in state.participants}
    dtype = state.declared_type

    if dtype is DialogueType.INQUIRY:
        values = set(polarities.values())
        if None not in values and len(values) == 1:
            return GoalVerdict(True, "all participants share one verdict on "
                                     "the crucial proposition")
        return GoalVerdict(False, "no shared verdict on the crucial proposition")

    if dtype in (DialogueType.PERSUASION, DialogueType.DEBATE):
        unanswered = _unanswered_challenge(state)
        if unanswered is not None:
            return GoalVerdict(False, f"unanswered challenge on '{unanswered}'")
        prover = state.participants[0]
        target = Polarity.AFFIRMED if prover.initial_stance is Stance.TRUE \
            else Polarity.DENIED
        dissenters = [p for p in state.participants[1:]
                      if p.initial_stance != prover.initial_stance]
        if all(polarities[p.id] == target for p in dissenters):
            return GoalVerdict(True, "dissenting party now shares the "
                                     "proposer's commitment")
        return GoalVerdict(False, "dissenting party was not persuaded")

    if dtype in (DialogueType.INFORMATION_SEEKING, DialogueType.PEDAGOGICAL):
        informed = [p for p in state.participants
                    if p.initial_stance is not Stance.UNKNOWN]
        seekers = [p for p in state.participants
                   if p.initial_stance is Stance.UNKNOWN]
        if not informed or not seekers:
            return GoalVerdict(False, "no information asymmetry to resolve")
        source = Polarity.AFFIRMED if informed[0].initial_stance is Stance.TRUE \
            else Polarity.DENIED
        if all(polarities[p.id] == source for p in seekers):
            return GoalVerdict(True, "knowledge transferred to the seeker")
        return GoalVerdict(False, "seeker has not acquired the information")

    if dtype in (DialogueType.DELIBERATION, DialogueType.NEGOTIATION):
        if state.settlement is None:
            return GoalVerdict(False, "no settlement proposition designated")
        if all(state.store_of(p.id).polarity_of(state.settlement)
               is Polarity.AFFIRMED for p in state.participants):
            return GoalVerdict(True, "settlement proposition jointly affirmed")
        return GoalVerdict(False, "settlement proposition not jointly affirmed")

    # eristic: success is merely that both positions became explicit
    if all(pol is not None for pol in polarities.values()):
        return GoalVerdict(True, "both positions on the crucial proposition "
                                 "are explicit")
    return GoalVerdict(False, "positions not yet explicit")


@dataclass(frozen=True)
class ViolationInfo:
    turn: int
    rule: str
    message: str


@dataclass(frozen=True)
class ReplayResult:
    state: DialogueState  # final state, or the snapshot before the violation
    violation: Optional[ViolationInfo] = None

    @property
    def ok(self) -> bool:
        return self.violation is None


def replay_moves(initial: DialogueState, moves: tuple[Move, ...],
                 shift_window: int = 3) -> ReplayResult:
    """Fold apply_move over a move list, stopping at the first violation.

    Undeclared drifts detected by the shift analyser switch the
    operative type before the offending move is applied, so a transcript
    that coherently settles into another dialogue type replays cleanly.
    """
    from .shifts import segment_moves  # deferred: shifts uses engine types

    segments = segment_moves(moves, initial.declared_type, shift_window)
    switch_at = {s.start_turn: s.operative_type
                 for s in segments[1:] if not s.declared}
    state = initial
    for move in moves:
        if move.turn in switch_at:
            state = replace(state, current_type=switch_at[move.turn])
        try:
            state = apply_move(state, move)
        except ProtocolViolation as exc:
            return ReplayResult(state, ViolationInfo(
                move.turn, exc.rule, str(exc)))
    return ReplayResult(state)


def replay_report(dialogue_id: str, result: ReplayResult) -> dict:
    """JSON-ready replay summary with deterministic ordering."""
    state = result.state
    verdict = goal_achieved(state)
    return {
        "dialogue_id": dialogue_id,
        "final_phase": state.phase.value,
        "goal": {"achieved": verdict.achieved, "reason": verdict.reason},
        "violations": ([] if result.ok else
                       [{"turn": result.violation.turn,
                         "rule": result.violation.rule}]),
        "stores": {
            s.owner: sorted([p, pol.value] for p, pol in s.commitments)
            for s in state.stores
        },
    }
