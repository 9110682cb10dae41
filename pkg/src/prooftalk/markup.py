"""Lexer, parser and serializer for the `.arg` markup format.

The format declares propositions, Toulmin argument blocks and dialogue
transcripts (see the grammar in the README).  Parsing reports every
error it can recover to, each with an exact source span; serializing a
valid document and reparsing it yields a structurally equal document.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .engine import Move, MoveKind, Participant, Role
from .model import (
    ArgumentGraph,
    CycleError,
    Link,
    LinkRole,
    Proposition,
    Qualifier,
    QualifierKind,
    SlotMismatch,
    ToulminArgument,
)
from .typology import DialogueType, Stance


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    offset: int
    length: int


@dataclass(frozen=True)
class ParseError:
    span: SourceSpan
    expected: str
    found: str
    hint: Optional[str] = None

    @property
    def message(self) -> str:
        msg = f"expected {self.expected}, found {self.found}"
        if self.hint:
            msg += f" ({self.hint})"
        return msg


class MarkupError(Exception):
    def __init__(self, errors: list[ParseError]):
        self.errors = errors
        first = errors[0]
        super().__init__(
            f"{first.span.line}:{first.span.column}: {first.message}"
            + (f" (+{len(errors) - 1} more)" if len(errors) > 1 else ""))


KEYWORDS = frozenset({
    "version", "prop", "argument", "dialogue", "proof",
    "data", "warrant", "claim", "backing", "qualifier", "rebuttal", "uses",
    "type", "participants", "stance", "settlement", "move", "dialogues",
    "assert", "challenge", "question", "concede", "retract", "offer",
    "threat", "declare_shift", "close",
})

_PUNCT = {"{": "lbrace", "}": "rbrace", ":": "colon", ",": "comma",
          ";": "semicolon"}

QUALIFIER_WORDS = {
    "necessarily": QualifierKind.NECESSARILY,
    "almost_certainly": QualifierKind.ALMOST_CERTAINLY,
    "probably": QualifierKind.PROBABLY,
    "presumably": QualifierKind.PRESUMABLY,
}
_QUALIFIER_KEYWORD = {v: k for k, v in QUALIFIER_WORDS.items()}

TYPE_WORDS = {t.value: t for t in DialogueType}
STANCE_WORDS = {s.value: s for s in Stance}
MOVE_WORDS = {k.value: k for k in MoveKind}


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    span: SourceSpan


def tokenize(source: str) -> list[Token]:
    """Lex the source into tokens; raises MarkupError with an exact span
    on an unterminated string or illegal character."""
    tokens: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(source)

    def advance(text: str) -> None:
        nonlocal i, line, col
        for ch in text:
            i += 1
            if ch == "\n":
                line, col = line + 1, 1
            else:
                col += 1

    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            advance(ch)
            continue
        if ch == "#":
            end = source.find("\n", i)
            advance(source[i:] if end < 0 else source[i:end])
            continue
        start_span = (line, col, i)
        if ch == "<" and source.startswith("<-", i):
            tokens.append(Token("arrow", "<-", SourceSpan(*start_span, 2)))
            advance("<-")
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, SourceSpan(*start_span, 1)))
            advance(ch)
            continue
        if ch == '"':
            j, parts = i + 1, []
            while j < n and source[j] != '"':
                if source[j] == "\\":
                    if j + 1 < n and source[j + 1] in ('"', "\\"):
                        parts.append(source[j + 1])
                        j += 2
                        continue
                    raise MarkupError([ParseError(
                        SourceSpan(*start_span, j + 2 - i), "string",
                        source[i:j + 2], "illegal escape sequence")])
                parts.append(source[j])
                j += 1
            if j >= n:
                raise MarkupError([ParseError(
                    SourceSpan(*start_span, 1), "closing quote",
                    source[i:min(i + 20, n)], "unterminated string")])
            tokens.append(Token("string", "".join(parts),
                                SourceSpan(*start_span, j + 1 - i)))
            advance(source[i:j + 1])
            continue
        if ch.isdigit():
            j = i
            while j < n and source[j].isdigit():
                j += 1
            tokens.append(Token("int", source[i:j], SourceSpan(*start_span, j - i)))
            advance(source[i:j])
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            word = source[i:j]
            kind = "keyword" if word in KEYWORDS else "ident"
            tokens.append(Token(kind, word, SourceSpan(*start_span, j - i)))
            advance(word)
            continue
        raise MarkupError([ParseError(
            SourceSpan(*start_span, 1), "token", ch, "illegal character")])
    return tokens


@dataclass(frozen=True)
class DialogueDecl:
    name: str
    declared_type: DialogueType
    participants: tuple[Participant, ...]
    crucial: str
    settlement: Optional[str]
    moves: tuple[Move, ...]


@dataclass(frozen=True)
class ProofDecl:
    name: str
    dialogues: tuple[str, ...]


@dataclass
class Document:
    graph: ArgumentGraph = field(default_factory=ArgumentGraph)
    dialogues: dict[str, DialogueDecl] = field(default_factory=dict)
    proofs: dict[str, ProofDecl] = field(default_factory=dict)
    block_spans: dict[str, SourceSpan] = field(
        default_factory=dict, compare=False, repr=False)


_EOF = Token("eof", "<end of input>", SourceSpan(0, 0, 0, 1))


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0
        self.errors: list[ParseError] = []
        self.doc = Document()
        # (slot_id, source_arg_name, target_arg_name, span)
        self.uses: list[tuple[str, str, str, SourceSpan]] = []
        # (prop_id, span) references to resolve after the full parse
        self.pending_refs: list[tuple[str, SourceSpan]] = []

    def peek(self) -> Token:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else _EOF

    def next(self) -> Token:
        tok = self.peek()
        if self.pos < len(self.tokens):
            self.pos += 1
        return tok

    def error(self, expected: str, tok: Optional[Token] = None,
              hint: Optional[str] = None) -> None:
        tok = tok or self.peek()
        found = tok.value if tok.kind != "eof" else "<end of input>"
        self.errors.append(ParseError(tok.span, expected, found, hint))

    def expect(self, kind: str, expected: Optional[str] = None) -> Optional[Token]:
        tok = self.peek()
        if tok.kind == kind:
            return self.next()
        self.error(expected or kind)
        return None

    def expect_kw(self, word: str) -> bool:
        tok = self.peek()
        if tok.kind == "keyword" and tok.value == word:
            self.next()
            return True
        self.error(f"'{word}'")
        return False

    def at_kw(self, *words: str) -> bool:
        tok = self.peek()
        return tok.kind == "keyword" and tok.value in words

    def skip_block(self) -> None:
        """Recovery: skip to the end of the current block or to the next
        top-level declaration keyword."""
        depth = 0
        while self.peek().kind != "eof":
            tok = self.peek()
            if depth == 0 and self.at_kw("prop", "argument", "dialogue", "proof"):
                return
            self.next()
            if tok.kind == "lbrace":
                depth += 1
            elif tok.kind == "rbrace":
                depth -= 1
                if depth <= 0:
                    return

    # --- propositions ------------------------------------------------

    def declare_prop(self, pid: str, text: str, span: SourceSpan) -> None:
        existing = self.doc.graph.propositions.get(pid)
        if existing is None:
            self.doc.graph.propositions[pid] = Proposition(pid, text)
        elif existing.text != text:
            self.errors.append(ParseError(
                span, "fresh proposition id", pid,
                "duplicate id with conflicting text"))

    # --- top level ---------------------------------------------------

    def parse(self) -> Document:
        if self.at_kw("version"):
            self.next()
            self.expect("int", "version number")
        while self.peek().kind != "eof":
            if self.at_kw("prop"):
                self.parse_prop()
            elif self.at_kw("argument"):
                self.parse_argument()
            elif self.at_kw("dialogue"):
                self.parse_dialogue()
            elif self.at_kw("proof"):
                self.parse_proof()
            else:
                self.error("'prop', 'argument', 'dialogue' or 'proof'")
                self.skip_block()
        self.resolve_uses()
        self.resolve_refs()
        return self.doc

    def parse_prop(self) -> None:
        self.next()  # prop
        ident = self.expect("ident", "proposition id")
        if not self.expect("colon") or ident is None:
            self.skip_block()
            return
        text = self.expect("string", "proposition text")
        if text is None:
            self.skip_block()
            return
        self.declare_prop(ident.value, text.value, ident.span)

    # --- argument blocks ---------------------------------------------

    def parse_argument(self) -> None:
        kw = self.next()  # argument
        name = self.expect("string", "argument name")
        if name is None or not self.expect("lbrace"):
            self.skip_block()
            return
        if name.value in self.doc.graph.arguments:
            self.error("fresh argument name", name, "duplicate argument")
        data: list[str] = []
        rebuttals: list[str] = []
        warrant = claim = backing = None
        qualifier: Optional[Qualifier] = None

        def named_slot() -> Optional[str]:
            ident = self.expect("ident", "proposition id")
            if ident is None or not self.expect("colon"):
                return None
            text = self.expect("string", "proposition text")
            if text is None:
                return None
            self.declare_prop(ident.value, text.value, ident.span)
            return ident.value

        while not self.peek().kind == "rbrace":
            tok = self.peek()
            if tok.kind == "eof":
                self.error("'}'")
                break
            if self.at_kw("data"):
                self.next()
                pid = named_slot()
                if pid is not None:
                    data.append(pid)
            elif self.at_kw("rebuttal"):
                self.next()
                pid = named_slot()
                if pid is not None:
                    rebuttals.append(pid)
            elif self.at_kw("warrant"):
                self.next()
                warrant = named_slot() or warrant
            elif self.at_kw("backing"):
                self.next()
                backing = named_slot() or backing
            elif self.at_kw("claim"):
                self.next()
                claim = named_slot() or claim
            elif self.at_kw("qualifier"):
                self.next()
                if self.expect("colon"):
                    qualifier = self.parse_qualifier() or qualifier
            elif self.at_kw("uses"):
                self.next()
                ident = self.expect("ident", "slot proposition id")
                if ident and self.expect("arrow") and self.expect_kw("argument"):
                    src = self.expect("string", "argument name")
                    if src:
                        self.uses.append(
                            (ident.value, src.value, name.value, ident.span))
            else:
                self.error("argument slot keyword", tok)
                self.next()
        self.expect("rbrace")
        self.doc.graph.arguments[name.value] = ToulminArgument(
            id=name.value, data=tuple(data), warrant=warrant, claim=claim,
            backing=backing, qualifier=qualifier, rebuttals=tuple(rebuttals))
        self.doc.block_spans[f"argument:{name.value}"] = kw.span

    def parse_qualifier(self) -> Optional[Qualifier]:
        tok = self.next()
        if tok.kind == "ident" and tok.value in QUALIFIER_WORDS:
            return Qualifier(QUALIFIER_WORDS[tok.value])
        if tok.kind == "ident" and tok.value == "custom":
            label = self.expect("string", "custom qualifier label")
            if label is None:
                return None
            return Qualifier(QualifierKind.CUSTOM, label.value)
        self.error("qualifier keyword", tok)
        return None

    # --- dialogue blocks ---------------------------------------------

    def parse_dialogue(self) -> None:
        kw = self.next()  # dialogue
        name = self.expect("string", "dialogue name")
        if name is None or not self.expect("lbrace"):
            self.skip_block()
            return
        if name.value in self.doc.dialogues:
            self.error("fresh dialogue name", name, "duplicate dialogue")

        declared_type: Optional[DialogueType] = None
        order: list[str] = []
        stances: dict[str, Stance] = {}
        crucial: Optional[str] = None
        settlement: Optional[str] = None
        moves: list[Move] = []

        while self.peek().kind != "rbrace":
            tok = self.peek()
            if tok.kind == "eof":
                self.error("'}'")
                break
            if self.at_kw("type"):
                self.next()
                if self.expect("colon"):
                    t = self.next()
                    if t.kind == "ident" and t.value in TYPE_WORDS:
                        declared_type = TYPE_WORDS[t.value]
                    else:
                        self.error("dialogue type name", t)
            elif self.at_kw("participants"):
                self.next()
                if self.expect("colon"):
                    first = self.expect("ident", "participant id")
                    if first:
                        order.append(first.value)
                    while self.peek().kind == "comma":
                        self.next()
                        ident = self.expect("ident", "participant id")
                        if ident:
                            order.append(ident.value)
            elif self.at_kw("stance"):
                self.next()
                pid = self.expect("ident", "participant id")
                prop = self.expect("ident", "proposition id")
                if pid and prop and self.expect("colon"):
                    v = self.next()
                    if v.kind == "ident" and v.value in STANCE_WORDS:
                        stances[pid.value] = STANCE_WORDS[v.value]
                    else:
                        self.error("'true', 'false' or 'unknown'", v)
                        continue
                    if crucial is not None and crucial != prop.value:
                        self.error("the crucial proposition", prop,
                                   "stance lines must share one proposition")
                    else:
                        crucial = prop.value
                        self.pending_refs.append((prop.value, prop.span))
            elif self.at_kw("settlement"):
                self.next()
                ident = self.expect("ident", "proposition id")
                if ident:
                    settlement = ident.value
                    self.pending_refs.append((ident.value, ident.span))
            elif self.at_kw("move"):
                self.next()
                turn = self.expect("int", "turn number")
                speaker = self.expect("ident", "speaker id")
                kind_tok = self.next()
                if kind_tok.kind != "keyword" or kind_tok.value not in MOVE_WORDS:
                    self.error("move kind", kind_tok)
                    continue
                kind = MOVE_WORDS[kind_tok.value]
                subj_tok = self.next()
                subject: Union[str, DialogueType, None] = None
                if kind is MoveKind.DECLARE_SHIFT:
                    if subj_tok.kind == "ident" and subj_tok.value in TYPE_WORDS:
                        subject = TYPE_WORDS[subj_tok.value]
                    else:
                        self.error("dialogue type name", subj_tok)
                elif subj_tok.kind == "ident":
                    subject = subj_tok.value
                    self.pending_refs.append((subj_tok.value, subj_tok.span))
                else:
                    self.error("proposition id", subj_tok)
                if turn and speaker and subject is not None:
                    moves.append(Move(int(turn.value), speaker.value,
                                      kind, subject))
            else:
                self.error("dialogue entry keyword", tok)
                self.next()
        self.expect("rbrace")

        if declared_type is None:
            self.error("'type' declaration in dialogue block", name)
            return
        if crucial is None:
            self.error("at least one 'stance' line in dialogue block", name)
            return
        participants = tuple(
            Participant(pid,
                        Role.PROVER if i == 0 else Role.INTERLOCUTOR,
                        stances.get(pid, Stance.UNKNOWN))
            for i, pid in enumerate(order))
        for pid in stances:
            if pid not in order:
                self.error("declared participant", name,
                           f"stance for unknown participant '{pid}'")
        self.doc.dialogues[name.value] = DialogueDecl(
            name.value, declared_type, participants, crucial, settlement,
            tuple(moves))
        self.doc.block_spans[f"dialogue:{name.value}"] = kw.span

    # --- proof blocks ------------------------------------------------

    def parse_proof(self) -> None:
        kw = self.next()  # proof
        name = self.expect("string", "proof name")
        if name is None or not self.expect("lbrace"):
            self.skip_block()
            return
        names: list[str] = []
        if self.expect_kw("dialogues") and self.expect("colon"):
            ident = self.expect("ident", "dialogue name")
            if ident:
                names.append(ident.value)
            while self.peek().kind == "comma":
                self.next()
                ident = self.expect("ident", "dialogue name")
                if ident:
                    names.append(ident.value)
        self.expect("rbrace")
        for n in names:
            if n not in self.doc.dialogues:
                self.error("declared dialogue name", kw,
                           f"proof '{name.value}' references unknown "
                           f"dialogue '{n}'")
        self.doc.proofs[name.value] = ProofDecl(name.value, tuple(names))
        self.doc.block_spans[f"proof:{name.value}"] = kw.span

    # --- resolution --------------------------------------------------

    def resolve_uses(self) -> None:
        links = set(self.doc.graph.links)
        for slot_id, src, target, span in self.uses:
            graph = self.doc.graph
            if src not in graph.arguments:
                self.errors.append(ParseError(
                    span, "declared argument", src, "unknown source argument"))
                continue
            target_arg = graph.arguments[target]
            if slot_id in target_arg.data:
                role = LinkRole.DATUM
            elif slot_id == target_arg.backing:
                role = LinkRole.BACKING
            else:
                self.errors.append(ParseError(
                    span, "a datum or backing of this argument", slot_id,
                    "uses clause must name a local slot"))
                continue
            if graph.arguments[src].claim != slot_id:
                self.errors.append(ParseError(
                    span, f"claim of argument '{src}'", slot_id,
                    "source claim does not match the slot"))
                continue
            links.add(Link(src, target, role))
        self.doc.graph.links = tuple(sorted(links))
        from .model import _has_cycle
        if _has_cycle(self.doc.graph.links):
            anchor = self.uses[-1][3] if self.uses else SourceSpan(1, 1, 0, 1)
            self.errors.append(ParseError(
                anchor, "acyclic support links", "uses",
                "support cycle between arguments"))

    def resolve_refs(self) -> None:
        for pid, span in self.pending_refs:
            if pid not in self.doc.graph.propositions:
                self.errors.append(ParseError(
                    span, "declared proposition", pid, "dangling reference"))


def parse_document(source: str) -> Document:
    """Parse markup text; raises MarkupError listing every recoverable
    error, the first one earliest in the source."""
    tokens = tokenize(source)
    parser = _Parser(tokens)
    doc = parser.parse()
    if parser.errors:
        raise MarkupError(
            sorted(parser.errors, key=lambda e: e.span.offset))
    return doc


# --- serialization ----------------------------------------------------

def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _slot_props(graph: ArgumentGraph) -> set[str]:
    used: set[str] = set()
    for arg in graph.arguments.values():
        used.update(arg.data)
        used.update(arg.rebuttals)
        used.update(p for p in (arg.warrant, arg.claim, arg.backing) if p)
    return used


def serialize(doc: Document) -> str:
    """Canonical text for a document: slot order data, warrant, backing,
    qualifier, rebuttals, claim; two-space indent; LF line endings;
    blocks sorted by name.  parse(serialize(doc)) == doc structurally."""
    graph = doc.graph
    lines: list[str] = []

    in_slots = _slot_props(graph)
    for pid in sorted(graph.propositions):
        if pid not in in_slots:
            lines.append(f"prop {pid}: {_quote(graph.propositions[pid].text)}")

    def text_of(pid: str) -> str:
        return _quote(graph.propositions[pid].text)

    for aid in sorted(graph.arguments):
        arg = graph.arguments[aid]
        if lines:
            lines.append("")
        lines.append(f"argument {_quote(aid)} {{")
        for d in arg.data:
            lines.append(f"  data {d}: {text_of(d)}")
        if arg.warrant is not None:
            lines.append(f"  warrant {arg.warrant}: {text_of(arg.warrant)}")
        if arg.backing is not None:
            lines.append(f"  backing {arg.backing}: {text_of(arg.backing)}")
        if arg.qualifier is not None:
            if arg.qualifier.kind is QualifierKind.CUSTOM:
                lines.append(f"  qualifier: custom {_quote(arg.qualifier.label)}")
            else:
                lines.append(
                    f"  qualifier: {_QUALIFIER_KEYWORD[arg.qualifier.kind]}")
        for r in arg.rebuttals:
            lines.append(f"  rebuttal {r}: {text_of(r)}")
        if arg.claim is not None:
            lines.append(f"  claim {arg.claim}: {text_of(arg.claim)}")
        for link in sorted(graph.links):
            if link.target == aid:
                slot = graph.arguments[link.source].claim
                lines.append(f"  uses {slot} <- argument {_quote(link.source)}")
        lines.append("}")

    for dname in sorted(doc.dialogues):
        d = doc.dialogues[dname]
        if lines:
            lines.append("")
        lines.append(f"dialogue {_quote(dname)} {{")
        lines.append(f"  type: {d.declared_type.value}")
        lines.append("  participants: " + ", ".join(p.id for p in d.participants))
        for p in d.participants:
            lines.append(
                f"  stance {p.id} {d.crucial}: {p.initial_stance.value}")
        if d.settlement is not None:
            lines.append(f"  settlement {d.settlement}")
        for m in d.moves:
            subject = (m.subject.value if isinstance(m.subject, DialogueType)
                       else m.subject)
            lines.append(
                f"  move {m.turn} {m.speaker} {m.kind.value} {subject}")
        lines.append("}")

    for pname in sorted(doc.proofs):
        p = doc.proofs[pname]
        if lines:
            lines.append("")
        lines.append(f"proof {_quote(pname)} {{")
        lines.append("  dialogues: " + ", ".join(p.dialogues))
        lines.append("}")

    return "\n".join(lines) + ("\n" if lines else "")
