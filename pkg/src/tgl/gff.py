"""Ground fact file (GFF) parsing and serialization.

A GFF holds one `at(Id, Split, Label, Term, NeighborList).` clause per node,
in ISO-compatible ground clause syntax:

    clause   := "at(" id "," split "," label "," term "," list ")."
    id,label := decimal integer
    split    := "tr" | "va" | "te"
    term     := atom | integer | atom "(" term ("," term)* ")"
    list     := "[" (id ("," id)*)? "]"
    atom     := unquoted-atom | "'" (char | "''")* "'"

Clauses end at a '.' followed by layout (or a comment, or end of input).
`%` comments and whitespace between tokens are ignored. Clauses whose functor
is not `at` are skipped and counted, unless strict mode makes them errors.
Parsing is single-pass: memory stays proportional to one clause plus the
accumulated dataset.
"""

from __future__ import annotations

import codecs
import io
import os
import re
import sys
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

from .terms import Atom, Compound, GroundTerm, Int

SPLITS = ("tr", "va", "te")


class GffError(ValueError):
    """Base class for fact-file errors."""


class ParseError(GffError):
    """Malformed input, with 1-based line and column of the offending text."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class ValidationError(GffError):
    """Structurally valid clauses that violate dataset invariants."""


@dataclass(frozen=True, slots=True)
class NodeRecord:
    """One at/5 fact: node id, split marker, class label, content, neighbors."""

    id: int
    split: str
    label: int
    content: GroundTerm
    neighbors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "neighbors", tuple(self.neighbors))


class Dataset:
    """Immutable id-indexed collection of node records with split views.

    Derived on construction: number of label classes (1 + max label seen),
    sorted per-split id lists, the label histogram over the training and
    validation splits, and the total neighbor-reference count.
    """

    __slots__ = (
        "_records",
        "_split_ids",
        "num_labels",
        "label_histogram",
        "num_edges",
        "skipped_clauses",
    )

    def __init__(self, records: Iterable[NodeRecord], skipped_clauses: int = 0):
        recs: dict[int, NodeRecord] = {}
        for r in records:
            if r.id in recs:
                raise ValidationError(f"duplicate node id {r.id}")
            if r.id < 0:
                raise ValidationError(f"node id must be non-negative, got {r.id}")
            if r.split not in SPLITS:
                raise ValidationError(f"unknown split marker {r.split!r} for node {r.id}")
            if r.label < 0:
                raise ValidationError(f"label out of range for node {r.id}: {r.label}")
            recs[r.id] = r
        for r in recs.values():
            for m in r.neighbors:
                if m not in recs:
                    raise ValidationError(f"node {r.id} cites unknown node {m}")
        split_ids = {s: [] for s in SPLITS}
        for i in sorted(recs):
            split_ids[recs[i].split].append(i)
        hist: Counter[int] = Counter()
        for s in ("tr", "va"):
            hist.update(recs[i].label for i in split_ids[s])
        object.__setattr__(self, "_records", recs)
        object.__setattr__(self, "_split_ids", {s: tuple(v) for s, v in split_ids.items()})
        object.__setattr__(self, "num_labels", 1 + max((r.label for r in recs.values()), default=-1))
        object.__setattr__(self, "label_histogram", dict(hist))
        object.__setattr__(self, "num_edges", sum(len(r.neighbors) for r in recs.values()))
        object.__setattr__(self, "skipped_clauses", skipped_clauses)

    def __setattr__(self, key, value):
        raise AttributeError("Dataset is immutable")

    def __len__(self) -> int:
        return len(self._records)

    def __contains__(self, node_id: int) -> bool:
        return node_id in self._records

    def __getitem__(self, node_id: int) -> NodeRecord:
        return self._records[node_id]

    def __iter__(self) -> Iterator[NodeRecord]:
        for i in sorted(self._records):
            yield self._records[i]

    def __eq__(self, other):
        return isinstance(other, Dataset) and self._records == other._records

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self):
        sizes = {s: len(self._split_ids[s]) for s in SPLITS}
        return f"Dataset({len(self)} nodes, {self.num_edges} edges, splits {sizes})"

    def __reduce__(self):
        return (Dataset, (list(self._records.values()), self.skipped_clauses))

    def get(self, node_id: int, default=None):
        return self._records.get(node_id, default)

    def split_ids(self, split: str) -> tuple[int, ...]:
        """Ids in a split, ascending."""
        return self._split_ids[split]

    @property
    def tr_ids(self) -> tuple[int, ...]:
        return self._split_ids["tr"]

    @property
    def va_ids(self) -> tuple[int, ...]:
        return self._split_ids["va"]

    @property
    def te_ids(self) -> tuple[int, ...]:
        return self._split_ids["te"]


# ---------------------------------------------------------------------------
# Tokenizer
# ---------------------------------------------------------------------------

# Group order: 1 layout/comment, 2 atom, 3 quoted atom, 4 integer, 5 punctuation.
_TOKEN_RE = re.compile(
    r"(\s+|%[^\n]*)|([a-z][A-Za-z0-9_]*)|('(?:[^']|'')*')|(-?[0-9]+)|([()\[\],.])"
)

_UNQUOTED_ATOM_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")

# Tokens are (kind, value, offset, length) tuples; kind is one of
# "atom", "int", "punct", "end".
_Token = tuple


def _tokenize(text: str, err: "_ErrorContext") -> list[_Token]:
    tokens: list[_Token] = []
    append = tokens.append
    pos = 0
    for m in _TOKEN_RE.finditer(text):
        start = m.start()
        if start != pos:
            break
        pos = m.end()
        idx = m.lastindex
        if idx == 2:
            # Interning pays off on fact files where lemmas repeat endlessly.
            append(("atom", sys.intern(m.group()), start, pos - start))
        elif idx == 5:
            append(("punct", m.group(), start, 1))
        elif idx == 4:
            append(("int", int(m.group()), start, pos - start))
        elif idx == 3:
            append(("atom", m.group()[1:-1].replace("''", "'"), start, pos - start))
        # idx == 1: layout or comment, skipped
    if pos != len(text):
        if text[pos] == "'":
            raise err.at(pos, "unterminated quoted atom")
        raise err.at(pos, f"unexpected character {text[pos]!r}")
    append(("end", None, len(text), 0))
    return tokens


class _ErrorContext:
    """Maps text offsets to absolute line/column for error reporting."""

    def __init__(self, text: str, base_line: int = 1, base_col: int = 1):
        self.text = text
        self.base_line = base_line
        self.base_col = base_col

    def at(self, offset: int, message: str) -> ParseError:
        before = self.text[:offset]
        nl = before.count("\n")
        if nl == 0:
            return ParseError(message, self.base_line, self.base_col + offset)
        return ParseError(message, self.base_line + nl, offset - before.rfind("\n"))


# ---------------------------------------------------------------------------
# Term and clause parsing
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, base_line: int = 1, base_col: int = 1, term_cache: dict | None = None):
        self.err = _ErrorContext(text, base_line, base_col)
        self.tokens = _tokenize(text, self.err)
        self.pos = 0
        # Hash-consing: one object per distinct subterm. On fact files whose
        # terms were expanded from DAGs this collapses the duplication again.
        self.terms = {} if term_cache is None else term_cache

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok[0] != "end":
            self.pos += 1
        return tok

    def fail(self, tok: _Token, message: str) -> ParseError:
        found = "end of input" if tok[0] == "end" else repr(self.err.text[tok[2] : tok[2] + tok[3]])
        return self.err.at(tok[2], f"{message}, found {found}")

    def expect_punct(self, char: str) -> _Token:
        tok = self.advance()
        if tok[0] != "punct" or tok[1] != char:
            raise self.fail(tok, f"expected {char!r}")
        return tok

    def expect_int(self, what: str, non_negative: bool = False) -> int:
        tok = self.advance()
        if tok[0] != "int":
            raise self.fail(tok, f"expected {what}")
        if non_negative and tok[1] < 0:
            raise ValidationError(f"{what} must be non-negative, got {tok[1]}")
        return tok[1]

    def expect_atom(self, what: str) -> str:
        tok = self.advance()
        if tok[0] != "atom":
            raise self.fail(tok, f"expected {what}")
        return tok[1]

    def at_compound_open(self) -> bool:
        """True when the current atom token is immediately followed by '('."""
        tok = self.tokens[self.pos]
        if tok[0] != "atom":
            return False
        nxt = self.tokens[self.pos + 1]
        return nxt[0] == "punct" and nxt[1] == "(" and nxt[2] == tok[2] + tok[3]

    def _shared(self, key, factory, arg) -> GroundTerm:
        term = self.terms.get(key)
        if term is None:
            term = factory(arg)
            self.terms[key] = term
        return term

    def parse_term(self) -> GroundTerm:
        # Iterative descent: a stack of (functor, collected args) frames keeps
        # arbitrarily deep terms off the Python call stack.
        stack: list[tuple[str, list[GroundTerm]]] = []
        while True:
            tok = self.peek()
            term: GroundTerm
            kind = tok[0]
            if kind == "int":
                self.advance()
                term = self._shared(tok[1], Int, tok[1])
            elif kind == "atom":
                if self.at_compound_open():
                    self.pos += 2  # functor and '('
                    stack.append((tok[1], []))
                    continue
                self.advance()
                term = self._shared(tok[1], Atom, tok[1])
            else:
                raise self.fail(tok, "expected a term")
            while True:
                if not stack:
                    return term
                stack[-1][1].append(term)
                nxt = self.advance()
                if nxt[0] == "punct":
                    if nxt[1] == ",":
                        break
                    if nxt[1] == ")":
                        functor, args = stack.pop()
                        args_t = tuple(args)
                        key = (functor, args_t)
                        term = self.terms.get(key)
                        if term is None:
                            term = Compound(functor, args_t)
                            self.terms[key] = term
                        continue
                raise self.fail(nxt, "expected ',' or ')'")

    def parse_id_list(self) -> tuple[int, ...]:
        self.expect_punct("[")
        tok = self.peek()
        if tok[0] == "punct" and tok[1] == "]":
            self.advance()
            return ()
        ids: list[int] = []
        while True:
            ids.append(self.expect_int("neighbor id", non_negative=True))
            tok = self.advance()
            if tok[0] == "punct" and tok[1] == "]":
                return tuple(ids)
            if not (tok[0] == "punct" and tok[1] == ","):
                raise self.fail(tok, "expected ',' or ']'")

    def parse_at_clause(self) -> NodeRecord:
        functor = self.expect_atom("clause functor")
        if functor != "at":
            raise self.fail(self.tokens[self.pos - 1], "expected an at/5 clause")
        self.expect_punct("(")
        node_id = self.expect_int("node id", non_negative=True)
        self.expect_punct(",")
        split = self.expect_atom("split marker")
        if split not in SPLITS:
            raise ValidationError(f"unknown split marker {split!r} for node {node_id}")
        self.expect_punct(",")
        label = self.expect_int("label")
        if label < 0:
            raise ValidationError(f"label out of range for node {node_id}: {label}")
        self.expect_punct(",")
        content = self.parse_term()
        self.expect_punct(",")
        neighbors = self.parse_id_list()
        self.expect_punct(")")
        self.expect_punct(".")
        tok = self.peek()
        if tok[0] != "end":
            raise self.fail(tok, "expected end of clause")
        return NodeRecord(node_id, split, label, content, neighbors)


def parse_term(text: str) -> GroundTerm:
    """Parse a single term from text. Raises ParseError on malformed input."""
    p = _Parser(text)
    term = p.parse_term()
    tok = p.peek()
    if tok[0] != "end":
        raise p.fail(tok, "expected end of input after term")
    return term


# ---------------------------------------------------------------------------
# Clause stream scanning
# ---------------------------------------------------------------------------

_CODE_DELIMS = re.compile(r"['%.]")
_AT_CLAUSE_RE = re.compile(r"(?:\s+|%[^\n]*)*(?:at|'at')\(")


def _iter_text_chunks(source) -> Iterator[str]:
    if isinstance(source, str):
        yield source
        return
    if isinstance(source, bytes):
        yield source.decode("utf-8")
        return
    if isinstance(source, os.PathLike):
        with open(source, "r", encoding="utf-8") as fh:
            while True:
                chunk = fh.read(1 << 16)
                if not chunk:
                    return
                yield chunk
    elif hasattr(source, "read"):
        decoder = None
        while True:
            chunk = source.read(1 << 16)
            if not chunk:
                if decoder is not None:
                    tail = decoder.decode(b"", final=True)
                    if tail:
                        yield tail
                return
            if isinstance(chunk, bytes):
                if decoder is None:
                    decoder = codecs.getincrementaldecoder("utf-8")()
                chunk = decoder.decode(chunk)
                if not chunk:
                    continue
            yield chunk
    else:
        raise TypeError(f"cannot read GFF from {type(source).__name__}")


def _advance_position(line: int, col: int, text: str) -> tuple[int, int]:
    nl = text.count("\n")
    if nl == 0:
        return line, col + len(text)
    return line + nl, len(text) - text.rfind("\n")


def _iter_clauses(chunks: Iterator[str]) -> Iterator[tuple[str, int, int]]:
    """Split a text stream into '.'-terminated clause chunks with positions."""
    buf = ""
    line, col = 1, 1  # absolute position of buf[0]
    state = "code"
    i = 0
    eof = False
    it = iter(chunks)
    while True:
        while not eof and i + 1 >= len(buf):
            nxt = next(it, None)
            if nxt is None:
                eof = True
            elif nxt:
                buf += nxt
        if i >= len(buf):
            break
        if state == "code":
            m = _CODE_DELIMS.search(buf, i)
            if m is None:
                i = len(buf)
                continue
            j = m.start()
            ch = buf[j]
            if ch == "'":
                state = "quote"
                i = j + 1
            elif ch == "%":
                state = "comment"
                i = j + 1
            else:  # '.'
                if j + 1 >= len(buf) and not eof:
                    i = j  # wait for lookahead
                    continue
                peek = buf[j + 1] if j + 1 < len(buf) else None
                if peek is None or peek.isspace() or peek == "%":
                    clause = buf[: j + 1]
                    yield clause, line, col
                    line, col = _advance_position(line, col, clause)
                    buf = buf[j + 1 :]
                    i = 0
                else:
                    i = j + 1
        elif state == "quote":
            j = buf.find("'", i)
            if j == -1:
                i = len(buf)
                continue
            if j + 1 >= len(buf) and not eof:
                i = j
                continue
            if j + 1 < len(buf) and buf[j + 1] == "'":
                i = j + 2
            else:
                state = "code"
                i = j + 1
        else:  # comment
            j = buf.find("\n", i)
            if j == -1:
                i = len(buf)
            else:
                state = "code"
                i = j + 1
    # Stream exhausted: anything but layout left over is an unterminated clause.
    if state == "quote":
        raise ParseError("unterminated quoted atom", line, col)
    tail = re.sub(r"%[^\n]*", "", buf)
    if tail.strip():
        lead = len(tail) - len(tail.lstrip())
        tline, tcol = _advance_position(line, col, buf[:lead])
        raise ParseError("unterminated clause (missing '.')", tline, tcol)


def parse_fact_file(source, strict: bool = False) -> Dataset:
    """Parse a GFF source into a validated Dataset.

    `source` may be a file object (text or binary), a path-like, or the
    content itself as str/bytes. Clauses with a functor other than `at` are
    skipped and counted in Dataset.skipped_clauses; with strict=True they
    raise ParseError instead.
    """
    records: list[NodeRecord] = []
    skipped = 0
    term_cache: dict = {}
    for clause, cline, ccol in _iter_clauses(_iter_text_chunks(source)):
        if _AT_CLAUSE_RE.match(clause) is None:
            if strict:
                lead = len(clause) - len(clause.lstrip())
                eline, ecol = _advance_position(cline, ccol, clause[:lead])
                raise ParseError("clause functor is not at/5", eline, ecol)
            skipped += 1
            continue
        records.append(_Parser(clause, cline, ccol, term_cache).parse_at_clause())
    return Dataset(records, skipped_clauses=skipped)


def load_fact_file(path, strict: bool = False) -> Dataset:
    """parse_fact_file over a filesystem path."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_fact_file(fh, strict=strict)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def atom_text(name: str) -> str:
    """Render an atom, quoting unless it matches the unquoted-atom rule."""
    if _UNQUOTED_ATOM_RE.match(name):
        return name
    return "'" + name.replace("'", "''") + "'"


def serialize_term(t: GroundTerm) -> str:
    """Canonical text of a term; parse_term inverts it exactly."""
    out: list[str] = []
    stack: list[object] = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, str):
            out.append(x)
        elif isinstance(x, Atom):
            out.append(atom_text(x.name))
        elif isinstance(x, Int):
            out.append(str(x.value))
        else:
            out.append(atom_text(x.functor))
            out.append("(")
            stack.append(")")
            for k in range(len(x.args) - 1, -1, -1):
                stack.append(x.args[k])
                if k != 0:
                    stack.append(",")
    return "".join(out)


def serialize_record(r: NodeRecord) -> str:
    """One canonical at/5 clause, without trailing newline."""
    neighbors = ",".join(str(m) for m in r.neighbors)
    return f"at({r.id},{r.split},{r.label},{serialize_term(r.content)},[{neighbors}])."


def write_gff(records: Iterable[NodeRecord], fh: io.TextIOBase) -> int:
    """Write records as one clause per line; returns the clause count."""
    n = 0
    for r in records:
        fh.write(serialize_record(r))
        fh.write("\n")
        n += 1
    return n
