"""Corpus ingestion and basic text utilities.

Annotated documents are read from a tab-separated token format (a CoNLL-U
compatible subset: ID, FORM, LEMMA, UPOS, XPOS, FEATS, HEAD, DEPREL, DEPS,
MISC, one token per line, blank line between sentences) together with a
manifest TSV carrying per-document metadata (id, file, level, domain).
Plaintext can be turned into surface-only documents with a rule-based
sentence splitter and word tokenizer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DataFormatError

NATIVE = "native"
L2 = "l2"
DOMAINS = (NATIVE, L2)

SCHEME_AGE = "WeeBitAge"
SCHEME_CEFR = "CEFR"

CEFR_NAMES = {1: "A2", 2: "B1", 3: "B2", 4: "C1", 5: "C2"}
_CEFR_VALUES = {name: value for value, name in CEFR_NAMES.items()}

UPOS_TAGS = frozenset(
    {
        "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
        "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
    }
)

# Final tokens that do not end a sentence even though they carry a period.
ABBREVIATIONS = frozenset(
    {
        "dr.", "mr.", "mrs.", "ms.", "prof.", "st.", "jr.", "sr.", "rev.",
        "vs.", "etc.", "e.g.", "i.e.", "cf.", "al.", "no.", "fig.", "vol.",
        "dept.", "approx.", "est.", "inc.", "ltd.", "co.",
    }
)

_WORD_RE = re.compile(r"[A-Za-z0-9]+(?:['’][A-Za-z0-9]+)*")
_BOUNDARY_RE = re.compile(r"[.!?]+(?=\s|$)")
_VOWEL_GROUP_RE = re.compile(r"[aeiouy]+")


@dataclass(frozen=True)
class Token:
    """One token with its (possibly absent) linguistic annotations.

    ``head`` is a 1-based index into the owning sentence, 0 for the root,
    or None for surface-only tokens that carry no parse.
    """

    surface: str
    lemma: str = ""
    pos: str = ""
    head: int | None = None
    deprel: str = ""
    ne: str = "O"

    def key(self) -> str:
        """Lowercased lemma, falling back to the lowercased surface form."""
        return self.lemma.lower() if self.lemma else self.surface.lower()


@dataclass(frozen=True)
class Level:
    """A readability level: an integer 1..5 under a named scheme."""

    value: int
    scheme: str = SCHEME_CEFR

    def __post_init__(self):
        if not 1 <= self.value <= 5:
            raise DataFormatError(f"level value out of range: {self.value}")
        if self.scheme not in (SCHEME_AGE, SCHEME_CEFR):
            raise DataFormatError(f"unknown level scheme: {self.scheme}")

    @property
    def name(self) -> str:
        if self.scheme == SCHEME_CEFR:
            return CEFR_NAMES[self.value]
        return f"Level{self.value}"

    @staticmethod
    def parse(text: str) -> "Level | None":
        """Parse a manifest level string; empty or "-" means unlabeled."""
        s = text.strip()
        if s in ("", "-"):
            return None
        upper = s.upper()
        if upper in _CEFR_VALUES:
            return Level(_CEFR_VALUES[upper], SCHEME_CEFR)
        if upper.startswith("LEVEL"):
            s = upper[5:]
        if s.isdigit() and 1 <= int(s) <= 5:
            return Level(int(s), SCHEME_AGE)
        raise DataFormatError(f"unknown level string: {text!r}")


@dataclass(frozen=True)
class Document:
    """An immutable annotated text unit: sentences of tokens plus metadata."""

    id: str
    sentences: tuple[tuple[Token, ...], ...]
    label: Level | None = None
    domain: str = NATIVE
    surface_only: bool = False
    word_count: int = field(init=False)
    sentence_count: int = field(init=False)

    def __post_init__(self):
        if not self.sentences:
            raise DataFormatError(f"document {self.id!r} has no sentences")
        if self.domain not in DOMAINS:
            raise DataFormatError(f"document {self.id!r}: unknown domain {self.domain!r}")
        for i, sent in enumerate(self.sentences):
            if not sent:
                raise DataFormatError(f"document {self.id!r}: sentence {i + 1} is empty")
            if not self.surface_only:
                _validate_annotated_sentence(self.id, i + 1, sent)
        object.__setattr__(self, "word_count", sum(len(s) for s in self.sentences))
        object.__setattr__(self, "sentence_count", len(self.sentences))

    def tokens(self):
        """Iterate tokens in document order."""
        for sent in self.sentences:
            yield from sent

    @property
    def has_pos(self) -> bool:
        return not self.surface_only


def _validate_annotated_sentence(doc_id: str, sent_no: int, sent: tuple[Token, ...]):
    n = len(sent)
    roots = 0
    for tok in sent:
        if not tok.pos:
            raise DataFormatError(f"document {doc_id!r}: sentence {sent_no}: token {tok.surface!r} has empty POS")
        if tok.pos not in UPOS_TAGS:
            raise DataFormatError(f"document {doc_id!r}: sentence {sent_no}: unknown POS tag {tok.pos!r}")
        if tok.head is None or not 0 <= tok.head <= n:
            raise DataFormatError(
                f"document {doc_id!r}: sentence {sent_no}: head index {tok.head} outside [0, {n}]"
            )
        if tok.head == 0:
            roots += 1
    if roots != 1:
        raise DataFormatError(f"document {doc_id!r}: sentence {sent_no}: {roots} root tokens (expected 1)")


def count_syllables(word: str) -> int:
    """Heuristic syllable count: contiguous vowel groups (a, e, i, o, u, y),
    minus one for a terminal silent "e" unless it is the only group.

    Words without alphabetic characters fall back to 1.
    """
    letters = "".join(ch for ch in word.lower() if ch.isalpha())
    if not letters:
        return 1
    groups = _VOWEL_GROUP_RE.findall(letters)
    n = len(groups)
    if n > 1 and letters.endswith("e"):
        n -= 1
    return max(1, n)


def tokenize_plaintext(text: str, doc_id: str = "plaintext") -> Document:
    """Split raw text into a surface-only Document (no lemmas, POS, or parse).

    Sentences break on terminal ``.!?`` followed by whitespace, except after
    the shipped abbreviation list; words are maximal alphanumeric runs
    (internal apostrophes allowed). Punctuation is not kept as tokens.
    """
    if not text or not text.strip():
        raise DataFormatError("empty input text")
    pieces = []
    start = 0
    for m in _BOUNDARY_RE.finditer(text):
        before = text[: m.end()]
        last = before.rsplit(None, 1)[-1] if before.split() else ""
        if last.lower() in ABBREVIATIONS:
            continue
        pieces.append(text[start : m.end()])
        start = m.end()
    if start < len(text):
        pieces.append(text[start:])
    sentences = []
    for piece in pieces:
        words = _WORD_RE.findall(piece)
        if words:
            sentences.append(tuple(Token(surface=w) for w in words))
    if not sentences:
        raise DataFormatError("input text contains no word tokens")
    return Document(id=doc_id, sentences=tuple(sentences), surface_only=True)


def _parse_misc_ne(misc: str) -> str:
    if misc == "_":
        return "O"
    for part in misc.split("|"):
        if part.startswith("NE="):
            return part[3:]
    return "O"


def load_annotation_file(path: Path) -> tuple[tuple[Token, ...], ...]:
    """Read one annotation file into sentences of Tokens."""
    path = Path(path)
    if not path.exists():
        raise DataFormatError(f"annotation file not found: {path}")
    sentences: list[tuple[Token, ...]] = []
    rows: list[tuple[int, str, str, str, int, str, str]] = []

    def flush(last_line: int):
        nonlocal rows
        if not rows:
            return
        ids = [r[0] for r in rows]
        if ids != list(range(1, len(rows) + 1)):
            raise DataFormatError(f"{path}:{last_line}: token ids not contiguous from 1: {ids}")
        n = len(rows)
        roots = sum(1 for r in rows if r[4] == 0)
        for _, form, _, _, head, _, _ in rows:
            if not 0 <= head <= n:
                raise DataFormatError(
                    f"{path}:{last_line}: head index {head} of {form!r} outside [0, {n}]"
                )
        if roots != 1:
            raise DataFormatError(f"{path}:{last_line}: sentence has {roots} roots (expected 1)")
        toks = tuple(
            Token(surface=form, lemma=lemma, pos=pos, head=head, deprel=deprel, ne=ne)
            for (_, form, lemma, pos, head, deprel, ne) in rows
        )
        sentences.append(toks)
        rows = []

    with path.open(encoding="utf-8") as fh:
        lineno = 0
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                flush(lineno)
                continue
            if line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 10:
                raise DataFormatError(f"{path}:{lineno}: expected 10 tab-separated columns, got {len(cols)}")
            tid, form, lemma, upos = cols[0], cols[1], cols[2], cols[3]
            head_s, deprel, misc = cols[6], cols[7], cols[9]
            if "-" in tid or "." in tid:
                # multiword-token ranges and empty nodes carry no tree position
                continue
            if not tid.isdigit():
                raise DataFormatError(f"{path}:{lineno}: bad token id {tid!r}")
            if not form:
                raise DataFormatError(f"{path}:{lineno}: empty FORM")
            try:
                head = int(head_s)
            except ValueError:
                raise DataFormatError(f"{path}:{lineno}: bad HEAD {head_s!r}") from None
            rows.append(
                (
                    int(tid),
                    form,
                    "" if lemma == "_" else lemma,
                    upos,
                    head,
                    "" if deprel == "_" else deprel,
                    _parse_misc_ne(misc),
                )
            )
        flush(lineno + 1)
    if not sentences:
        raise DataFormatError(f"{path}: no sentences found")
    return tuple(sentences)


def load_corpus(dir_path, manifest_path) -> list[Document]:
    """Load every document referenced by a manifest, in manifest order.

    The manifest is a TSV with a header line ``id	file	level	domain``.
    Level strings may be CEFR names (A2..C2), bare integers 1..5, or empty
    for unlabeled documents.
    """
    dir_path = Path(dir_path)
    manifest_path = Path(manifest_path)
    if not manifest_path.exists():
        raise DataFormatError(f"manifest not found: {manifest_path}")
    docs: list[Document] = []
    seen_ids: set[str] = set()
    with manifest_path.open(encoding="utf-8") as fh:
        header = fh.readline().rstrip("\n").split("\t")
        if header != ["id", "file", "level", "domain"]:
            raise DataFormatError(
                f"{manifest_path}:1: manifest header must be 'id\\tfile\\tlevel\\tdomain', got {header}"
            )
        for lineno, line in enumerate(fh, start=2):
            if not line.strip():
                continue
            cols = line.rstrip("\n").split("\t")
            if len(cols) != 4:
                raise DataFormatError(f"{manifest_path}:{lineno}: expected 4 columns, got {len(cols)}")
            doc_id, rel_file, level_s, domain = cols
            if doc_id in seen_ids:
                raise DataFormatError(f"{manifest_path}:{lineno}: duplicate document id {doc_id!r}")
            seen_ids.add(doc_id)
            domain = domain.strip().lower()
            if domain not in DOMAINS:
                raise DataFormatError(f"{manifest_path}:{lineno}: unknown domain {domain!r}")
            try:
                label = Level.parse(level_s)
            except DataFormatError as exc:
                raise DataFormatError(f"{manifest_path}:{lineno}: {exc}") from None
            sentences = load_annotation_file(dir_path / rel_file)
            docs.append(Document(id=doc_id, sentences=sentences, label=label, domain=domain))
    if not docs:
        raise DataFormatError(f"{manifest_path}: manifest lists no documents")
    return docs


def write_annotation_file(doc: Document, path: Path):
    """Serialize a Document back to the token format (inverse of loading)."""
    lines = []
    for sent in doc.sentences:
        for i, tok in enumerate(sent, start=1):
            misc = f"NE={tok.ne}" if tok.ne != "O" else "_"
            lines.append(
                "\t".join(
                    [
                        str(i),
                        tok.surface,
                        tok.lemma or "_",
                        tok.pos or "_",
                        "_",
                        "_",
                        str(tok.head if tok.head is not None else 0),
                        tok.deprel or "_",
                        "_",
                        misc,
                    ]
                )
            )
        lines.append("")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_corpus(docs: list[Document], dir_path, manifest_path):
    """Write documents plus a manifest so load_corpus can read them back."""
    dir_path = Path(dir_path)
    dir_path.mkdir(parents=True, exist_ok=True)
    rows = ["id\tfile\tlevel\tdomain"]
    for doc in docs:
        fname = f"{doc.id}.conllu"
        write_annotation_file(doc, dir_path / fname)
        level_s = doc.label.name if doc.label else "-"
        rows.append(f"{doc.id}\t{fname}\t{level_s}\t{doc.domain}")
    Path(manifest_path).write_text("\n".join(rows) + "\n", encoding="utf-8")
