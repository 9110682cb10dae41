"""Command-line front end.

Commands: validate, diagram, classify, analyze, report.  Exit codes:
0 clean, 1 domain-level failure (invalid arguments, protocol
violations), 2 usage, I/O or parse failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from . import engine, markup, shifts, typology
from .model import Severity, export_dot, validate_graph
from .typology import (
    GOAL_OF_TYPE,
    DialogueType,
    NoDispute,
    Outcome,
    UndefinedCell,
    classify_proof_dialogue,
    infer_initial_situation,
)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2

FIXTURE_NAMES = (
    "harry.arg",
    "theaetetus.arg",
    "four_colour_alcolea.arg",
    "four_colour_alternative.arg",
    "wiles_attempt.arg",
    "kempe_acceptance.arg",
    "shift_illicit.arg",
)


def fixture_paths() -> list[Path]:
    base = resources.files("prooftalk") / "fixtures"
    return [Path(str(base / name)) for name in FIXTURE_NAMES]


def _load(path: str, out) -> markup.Document | int:
    try:
        source = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"{path}: error: {exc}", file=out)
        return EXIT_USAGE
    try:
        return markup.parse_document(source)
    except markup.MarkupError as exc:
        for err in exc.errors:
            print(f"{path}:{err.span.line}:{err.span.column}: error: "
                  f"{err.message}", file=out)
        return EXIT_USAGE


def _emit(text: str, out_path) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    status = EXIT_OK
    for path in args.paths:
        doc = _load(path, sys.stderr)
        if isinstance(doc, int):
            return doc
        diagnostics = validate_graph(doc.graph)
        for diag in diagnostics:
            span = doc.block_spans.get(
                f"argument:{_owning_argument(doc, diag)}")
            line, col = (span.line, span.column) if span else (1, 1)
            print(f"{path}:{line}:{col}: {diag.severity.value}: {diag.message}")
        if any(d.severity is Severity.ERROR for d in diagnostics):
            status = EXIT_DOMAIN
    return status


def _owning_argument(doc: markup.Document, diag) -> str:
    # Diagnostics quote the argument id; match it back to a block span.
    for aid in doc.graph.arguments:
        if f"'{aid}'" in diag.message:
            return aid
    return ""


def cmd_diagram(args) -> int:
    doc = _load(args.path, sys.stderr)
    if isinstance(doc, int):
        return doc
    errors = [d for d in validate_graph(doc.graph)
              if d.severity is Severity.ERROR]
    if errors:
        for d in errors:
            print(f"{args.path}: error: {d.message}", file=sys.stderr)
        return EXIT_DOMAIN
    _emit(export_dot(doc.graph), args.out)
    return EXIT_OK


def _classify_dialogue(decl: markup.DialogueDecl) -> dict:
    prover, interlocutor = decl.participants[0], decl.participants[1]
    situation = infer_initial_situation(
        prover.initial_stance, interlocutor.initial_stance)
    goal = GOAL_OF_TYPE[decl.declared_type]
    entry: dict = {
        "declared_type": decl.declared_type.value,
        "main_goal": goal.value,
    }
    if isinstance(situation, NoDispute):
        entry["initial_situation"] = "no_dispute"
        entry["proof_dialogue"] = None
        entry["note"] = "participants already agree; no dialogue arises"
        return entry
    if decl.declared_type in (DialogueType.ERISTIC, DialogueType.DEBATE) \
            and situation.variant is typology.SituationKind.CONFLICT:
        situation = typology.InitialSituation(
            situation.variant, irreconcilable=True)
    entry["initial_situation"] = situation.variant.value
    if situation.asymmetry_direction:
        entry["asymmetry_direction"] = situation.asymmetry_direction.value
    try:
        pd = classify_proof_dialogue(situation, goal)
        entry["proof_dialogue"] = pd.value
        entry["suspect"] = typology.proof_dialogue_row(pd).suspect
    except UndefinedCell as exc:
        entry["proof_dialogue"] = None
        entry["note"] = str(exc)
    return entry


def cmd_classify(args) -> int:
    doc = _load(args.path, sys.stderr)
    if isinstance(doc, int):
        return doc
    report = {name: _classify_dialogue(decl)
              for name, decl in doc.dialogues.items()}
    if args.format == "json":
        _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    else:
        lines = []
        for name in sorted(report):
            e = report[name]
            lines.append(f"{name}: {e['declared_type']} "
                         f"({e['initial_situation']} / {e['main_goal']}) "
                         f"-> {e['proof_dialogue'] or 'undefined'}")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _analyze_dialogue(decl: markup.DialogueDecl, window: int) -> dict:
    initial = engine.new_dialogue(
        decl.declared_type, decl.crucial, decl.participants, decl.settlement)
    result = engine.replay_moves(initial, decl.moves, window)
    entry = engine.replay_report(decl.name, result)
    segments = shifts.segment_moves(decl.moves, decl.declared_type, window)
    entry["segments"] = [
        {"start_turn": s.start_turn, "end_turn": s.end_turn,
         "type": s.operative_type.value, "declared": s.declared}
        for s in segments
    ]
    entry["shifts"] = [
        {"at_turn": s.at_turn, "from": s.from_type.value,
         "to": s.to_type.value, "kind": s.kind.value, "mode": s.mode.value,
         "licitness": s.licitness.value, "reason": s.reason}
        for s in shifts.detect_shifts(segments)
    ]
    entry["classification"] = _classify_dialogue(decl)
    return entry


def cmd_analyze(args) -> int:
    doc = _load(args.path, sys.stderr)
    if isinstance(doc, int):
        return doc
    if not doc.dialogues:
        print(f"{args.path}: error: document contains no dialogues",
              file=sys.stderr)
        return EXIT_USAGE

    status = EXIT_OK
    dialogue_entries = []
    for name in sorted(doc.dialogues):
        try:
            entry = _analyze_dialogue(doc.dialogues[name], args.shift_window)
        except engine.StanceMismatch as exc:
            entry = {"dialogue_id": name, "error": str(exc)}
            status = EXIT_DOMAIN
            dialogue_entries.append(entry)
            continue
        if entry["violations"]:
            status = EXIT_DOMAIN
        dialogue_entries.append(entry)

    by_id = {e["dialogue_id"]: e for e in dialogue_entries}
    proof_entries = []
    for pname in sorted(doc.proofs):
        outcomes: dict = {}
        for dname in doc.proofs[pname].dialogues:
            entry = by_id.get(dname)
            if entry is None or "error" in entry:
                continue
            pd = entry["classification"].get("proof_dialogue")
            if pd is None:
                continue
            ok = entry["goal"]["achieved"] and not entry["violations"]
            outcomes[typology.ProofDialogueType(pd)] = (
                Outcome.SUCCESS if ok else Outcome.FAILURE)
        verdict = typology.assess_proof_status(outcomes)
        proof_entries.append({
            "proof_id": pname,
            "outcomes": {t.value: o.value for t, o in outcomes.items()},
            "status": verdict.variant.value,
            "diagnostics": list(verdict.diagnostics),
        })

    report = {"dialogues": dialogue_entries, "proofs": proof_entries}
    if args.format == "text":
        lines = []
        for e in dialogue_entries:
            if "error" in e:
                lines.append(f"{e['dialogue_id']}: error: {e['error']}")
                continue
            goal = "achieved" if e["goal"]["achieved"] else "not achieved"
            lines.append(f"{e['dialogue_id']}: goal {goal} "
                         f"({e['goal']['reason']}); "
                         f"{len(e['shifts'])} shift(s)")
        for e in proof_entries:
            lines.append(f"proof {e['proof_id']}: {e['status']}")
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.out)
    return status


def cmd_report(args) -> int:
    _emit(typology.tables_to_json(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prooftalk",
        description="Validate, diagram and analyze argument markup files.")
    parser.add_argument("--fixtures", action="store_true",
                        help="print paths of the embedded corpus files")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("validate", help="structural validation of arguments")
    p.add_argument("paths", nargs="+")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("diagram", help="emit a DOT diagram of the arguments")
    p.add_argument("path")
    p.add_argument("--out")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("classify", help="classify dialogues in a document")
    p.add_argument("path")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("analyze",
                       help="replay dialogues, detect shifts, assess proofs")
    p.add_argument("path")
    p.add_argument("--format", choices=["text", "json"], default="json")
    p.add_argument("--out")
    p.add_argument("--shift-window", type=int, default=3, dest="shift_window")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("report", help="emit the embedded typology tables")
    p.add_argument("--out")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.fixtures:
        for path in fixture_paths():
            print(path)
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    if getattr(args, "shift_window", 1) < 1:
        print("error: --shift-window must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
