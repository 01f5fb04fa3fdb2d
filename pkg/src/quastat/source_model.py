"""Source corpora, lexing, statement units and method boundaries.

Lexing is heuristic and works per language family (Java-like, C#-like).
The unit sequence produced here is the input to clone detection; method
spans bound gapped clone detection and the per-method code metrics.
"""

from __future__ import annotations

import enum
import hashlib
import json
import logging
import os
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

logger = logging.getLogger(__name__)


class Language(str, enum.Enum):
    JAVA = "java"
    CSHARP = "csharp"

    @classmethod
    def parse(cls, value: "str | Language") -> "Language":
        if isinstance(value, Language):
            return value
        key = str(value).strip().lower().replace("#", "sharp").replace("-", "")
        aliases = {"javalike": "java", "csharplike": "csharp", "cs": "csharp", "c": "csharp"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise ValueError(f"unknown language {value!r}; expected 'java' or 'csharp'") from None


EXTENSIONS = {Language.JAVA: (".java",), Language.CSHARP: (".cs",)}


class TokenKind(str, enum.Enum):
    IDENTIFIER = "Identifier"
    KEYWORD = "Keyword"
    LITERAL = "Literal"
    OPERATOR = "Operator"
    PUNCTUATION = "Punctuation"
    COMMENT_BLOCK = "CommentBlock"
    COMMENT_LINE = "CommentLine"
    WHITESPACE = "Whitespace"
    # C# preprocessor lines; kept for round-tripping, ignored by analyses.
    DIRECTIVE = "Directive"
    # Unterminated comment or literal; covers the rest of the file.
    ERROR = "Error"


TRIVIA = frozenset(
    {TokenKind.WHITESPACE, TokenKind.COMMENT_BLOCK, TokenKind.COMMENT_LINE,
     TokenKind.DIRECTIVE, TokenKind.ERROR}
)
COMMENTS = frozenset({TokenKind.COMMENT_BLOCK, TokenKind.COMMENT_LINE})

_COMMON_KEYWORDS = {
    "abstract", "break", "case", "catch", "class", "continue", "default", "do",
    "else", "enum", "finally", "for", "if", "interface", "new", "null", "private",
    "protected", "public", "return", "static", "switch", "this", "throw", "try",
    "void", "while", "int", "long", "short", "byte", "char", "float", "double",
}
JAVA_KEYWORDS = frozenset(_COMMON_KEYWORDS | {
    "assert", "boolean", "const", "extends", "final", "goto", "implements",
    "import", "instanceof", "native", "package", "strictfp", "super",
    "synchronized", "throws", "transient", "volatile",
})
CSHARP_KEYWORDS = frozenset(_COMMON_KEYWORDS | {
    "as", "base", "bool", "checked", "const", "decimal", "delegate", "event",
    "explicit", "extern", "fixed", "foreach", "goto", "implicit", "in",
    "internal", "is", "lock", "namespace", "object", "operator", "out",
    "override", "params", "readonly", "ref", "sbyte", "sealed", "sizeof",
    "stackalloc", "string", "struct", "typeof", "uint", "ulong", "unchecked",
    "unsafe", "ushort", "using", "virtual", "volatile",
})
KEYWORDS = {Language.JAVA: JAVA_KEYWORDS, Language.CSHARP: CSHARP_KEYWORDS}

# Built-in type names normalise like identifiers (type-2 clone equivalence).
TYPE_KEYWORDS = frozenset({
    "int", "long", "short", "byte", "char", "float", "double", "boolean", "bool",
    "decimal", "object", "string", "sbyte", "uint", "ulong", "ushort", "void",
})
BOOL_LITERALS = frozenset({"true", "false"})

_OPERATORS = sorted(
    [">>>=", "<<=", ">>=", ">>>", "??=", "->", "=>", "::", "??", "?.", "++", "--",
     "&&", "||", "==", "!=", "<=", ">=", "+=", "-=", "*=", "/=", "%=", "&=", "|=",
     "^=", "<<", ">>", "+", "-", "*", "/", "%", "=", "<", ">", "!", "~", "?", ":",
     "&", "|", "^", "@", "."],
    key=len,
    reverse=True,
)

_NUMBER = (
    r"0[xX][0-9a-fA-F_]+[lLuU]*"
    r"|0[bB][01_]+[lLuU]*"
    r"|(?:\d[\d_]*(?:\.\d[\d_]*)?|\.\d[\d_]*)(?:[eE][+-]?\d+)?[fFdDmMlLuU]*"
)

_BASE_RULES = [
    ("ws", r"[ \t\r\n\f\v]+"),
    ("block", r"/\*"),
    ("line", r"//[^\r\n]*"),
]
_TAIL_RULES = [
    ("str", r'"(?:[^"\\\r\n]|\\.)*"'),
    ("chr", r"'(?:[^'\\\r\n]|\\.)+'"),
    ("num", _NUMBER),
    ("ident", r"[^\W\d]\w*"),
    ("punct", r"[(){}\[\];,]"),
    ("op", "|".join(re.escape(op) for op in _OPERATORS)),
]
_LEXERS = {
    Language.JAVA: re.compile(
        "|".join(f"(?P<{n}>{p})" for n, p in
                 _BASE_RULES + [("text", r'"""[\s\S]*?"""'), ("jident", r"\$[\w$]*")] + _TAIL_RULES)
    ),
    Language.CSHARP: re.compile(
        "|".join(f"(?P<{n}>{p})" for n, p in
                 _BASE_RULES
                 + [("dir", r"#[^\r\n]*"),
                    ("verb", r'\$?@\$?"(?:[^"]|"")*"'),
                    ("interp", r'\$"(?:[^"\\\r\n]|\\.)*"'),
                    ("vident", r"@[^\W\d]\w*")]
                 + _TAIL_RULES)
    ),
}
_BLOCK_END = re.compile(r"\*/")
_LINES = re.compile(r"[^\n]*\n|[^\n]+\Z")


def split_lines(text: str) -> list[str]:
    """Split on ``\\n`` only, keeping line ends, so ``"".join`` is lossless."""
    return _LINES.findall(text)


class Token(NamedTuple):
    kind: TokenKind
    text: str
    line: int
    col: int

    @property
    def end_line(self) -> int:
        return self.line + self.text.count("\n")


@dataclass(frozen=True)
class Unit:
    """One normalised statement: the atom of clone detection."""

    file: str
    start_line: int
    end_line: int
    normalized_hash: str
    normalized_text: str
    token_start: int = field(default=0, repr=False, compare=False)
    token_stop: int = field(default=0, repr=False, compare=False)


@dataclass(frozen=True)
class MethodSpan:
    file: str
    unit_range: tuple[int, int]
    name: str

    @property
    def start(self) -> int:
        return self.unit_range[0]

    @property
    def stop(self) -> int:
        return self.unit_range[1]


@dataclass
class ExclusionFilter:
    patterns: list[str] = field(default_factory=list)
    rationale: str = ""

    def __post_init__(self) -> None:
        self._compiled = [re.compile(p) for p in self.patterns]

    def excludes(self, path: str) -> bool:
        return any(rx.search(path) for rx in self._compiled)


@dataclass(eq=False)
class SourceFile:
    path: str
    language: Language
    lines: list[str]
    byte_size: int
    warnings: list[str] = field(default_factory=list)

    @classmethod
    def from_text(cls, path: str, text: str, language: "Language | str" = Language.JAVA) -> "SourceFile":
        return cls(path, Language.parse(language), split_lines(text), len(text.encode("utf-8")))

    @property
    def text(self) -> str:
        return "".join(self.lines)

    @cached_property
    def tokens(self) -> list[Token]:
        return tokenize(self)

    @cached_property
    def _segmentation(self) -> tuple[list[Unit], list[MethodSpan]]:
        return _segment(self)

    @property
    def units(self) -> list[Unit]:
        return self._segmentation[0]

    @property
    def method_spans(self) -> list[MethodSpan]:
        return self._segmentation[1]

    @property
    def has_lexer_errors(self) -> bool:
        return any(t.kind is TokenKind.ERROR for t in self.tokens)


@dataclass
class Corpus:
    files: list[SourceFile] = field(default_factory=list)
    skipped: list[tuple[str, str]] = field(default_factory=list)
    root: str | None = None
    language: Language = Language.JAVA

    def __len__(self) -> int:
        return len(self.files)

    def __iter__(self):
        return iter(self.files)

    @property
    def loc(self) -> int:
        return sum(len(f.lines) for f in self.files)

    def unit_sequences(self) -> dict[str, list[Unit]]:
        return {f.path: f.units for f in self.files}

    def content_hash(self) -> str:
        h = hashlib.sha256()
        for f in sorted(self.files, key=lambda f: f.path):
            h.update(f.path.encode("utf-8") + b"\0" + f.text.encode("utf-8") + b"\0")
        return h.hexdigest()

    def manifest(self) -> dict:
        return {
            "files": [
                {"path": f.path, "language": f.language.value, "lines": len(f.lines),
                 "units": len(f.units)}
                for f in self.files
            ],
            "skipped": [{"path": p, "reason": r} for p, r in self.skipped],
        }


def load_corpus(root: "str | os.PathLike", filter: ExclusionFilter | None = None,
                language: "Language | str" = Language.JAVA) -> Corpus:
    """Load every non-excluded source file of ``language`` below ``root``."""
    root_path = Path(root)
    lang = Language.parse(language)
    if not root_path.is_dir() or not os.access(root_path, os.R_OK | os.X_OK):
        raise FileNotFoundError(f"cannot read corpus root {str(root)!r}")
    filter = filter or ExclusionFilter()
    corpus = Corpus(root=str(root_path), language=lang)
    exts = EXTENSIONS[lang]
    candidates = []
    for dirpath, dirnames, filenames in os.walk(root_path):
        dirnames.sort()
        for name in filenames:
            if name.endswith(exts):
                candidates.append(Path(dirpath) / name)
    for path in sorted(candidates, key=lambda p: p.relative_to(root_path).as_posix()):
        rel = path.relative_to(root_path).as_posix()
        if filter.excludes(rel):
            corpus.skipped.append((rel, "excluded"))
            continue
        try:
            raw = path.read_bytes()
        except OSError as exc:
            logger.warning("%s: unreadable (%s), skipped", rel, exc)
            corpus.skipped.append((rel, "unreadable"))
            continue
        if b"\0" in raw:
            logger.warning("%s: binary content, skipped", rel)
            corpus.skipped.append((rel, "undecodable"))
            continue
        text = raw.decode("utf-8", errors="replace")
        sf = SourceFile(rel, lang, split_lines(text), len(raw))
        if "�" in text and "�".encode("utf-8") not in raw:
            msg = f"{rel}: invalid UTF-8 replaced"
            logger.warning(msg)
            sf.warnings.append(msg)
        corpus.files.append(sf)
    return corpus


def corpus_from_texts(texts: "dict[str, str]", language: "Language | str" = Language.JAVA) -> Corpus:
    lang = Language.parse(language)
    return Corpus(files=[SourceFile.from_text(p, t, lang) for p, t in sorted(texts.items())],
                  language=lang)


_GROUP_KIND = {
    "ws": TokenKind.WHITESPACE, "line": TokenKind.COMMENT_LINE, "dir": TokenKind.DIRECTIVE,
    "str": TokenKind.LITERAL, "chr": TokenKind.LITERAL, "num": TokenKind.LITERAL,
    "text": TokenKind.LITERAL, "verb": TokenKind.LITERAL, "interp": TokenKind.LITERAL,
    "punct": TokenKind.PUNCTUATION,
}
_IDENT_GROUPS = frozenset({"ident", "jident", "vident"})


def _lex(text: str, language: Language) -> list[Token]:
    pattern = _LEXERS[language]
    keywords = KEYWORDS[language]
    tokens: list[Token] = []
    append = tokens.append
    pos, line, col, n = 0, 1, 1, len(text)
    while pos < n:
        m = pattern.match(text, pos)
        if m is None:
            ch = text[pos]
            if ch in "\"'":
                append(Token(TokenKind.ERROR, text[pos:], line, col))
                logger.warning("unterminated literal at line %d", line)
                break
            append(Token(TokenKind.OPERATOR, ch, line, col))
            pos += 1
            col += 1
            continue
        group = m.lastgroup
        chunk = m.group()
        if group == "block":
            end = _BLOCK_END.search(text, m.end())
            if end is None:
                append(Token(TokenKind.ERROR, text[pos:], line, col))
                logger.warning("unterminated block comment at line %d", line)
                break
            chunk = text[pos:end.end()]
            kind = TokenKind.COMMENT_BLOCK
        elif group in _IDENT_GROUPS:
            if chunk in BOOL_LITERALS:
                kind = TokenKind.LITERAL
            elif chunk in keywords:
                kind = TokenKind.KEYWORD
            else:
                kind = TokenKind.IDENTIFIER
        else:
            kind = _GROUP_KIND.get(group, TokenKind.OPERATOR)
        append(Token(kind, chunk, line, col))
        nl = chunk.count("\n")
        if nl:
            line += nl
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos += len(chunk)
    return tokens


def tokenize(file: "SourceFile | str", language: "Language | str | None" = None) -> list[Token]:
    """Lex a file; concatenating the token texts reproduces it exactly."""
    if isinstance(file, SourceFile):
        return _lex(file.text, file.language)
    return _lex(file, Language.parse(language or Language.JAVA))


def literal_placeholder(text: str) -> str:
    if text in BOOL_LITERALS:
        return "true"
    if text.startswith(("'",)):
        return "'c'"
    if '"' in text[:4]:
        return '""'
    return "0"


def _normal_form(tok: Token) -> str:
    if tok.kind is TokenKind.IDENTIFIER:
        return "id"
    if tok.kind is TokenKind.KEYWORD:
        return "id" if tok.text in TYPE_KEYWORDS else tok.text
    if tok.kind is TokenKind.LITERAL:
        return literal_placeholder(tok.text)
    return tok.text


def normalize_text(text: str, language: "Language | str" = Language.JAVA) -> str:
    """Normalise a code snippet the same way unit texts are normalised."""
    toks = _lex(text, Language.parse(language))
    return " ".join(_normal_form(t) for t in toks if t.kind not in TRIVIA)


def _hash(text: str) -> str:
    return hashlib.blake2b(text.encode("utf-8"), digest_size=8).hexdigest()


_EXPR_BRACE_PREV = frozenset({"=", ",", "(", "[", "]", "return", "?", "=>"})
_TYPE_DECL = frozenset({"class", "interface", "enum", "struct"})
_CONTROL = frozenset({"if", "for", "foreach", "while", "switch", "catch", "synchronized",
                      "using", "lock", "fixed", "do", "else", "try", "finally", "new"})


def _scope_kind(toks: Sequence[Token]) -> str:
    """Classify the statement that ends with a block-opening brace."""
    prev = None
    for i, t in enumerate(toks):
        if t.kind is TokenKind.KEYWORD and t.text == "namespace":
            return "namespace"
        if t.text in _TYPE_DECL and t.kind is TokenKind.KEYWORD and prev not in (".", ":", ","):
            return "type"
        if (t.text == "record" and t.kind is TokenKind.IDENTIFIER and i + 1 < len(toks)
                and toks[i + 1].kind is TokenKind.IDENTIFIER and prev != "."):
            return "type"
        prev = t.text
    return "other"


def _method_name(toks: Sequence[Token]) -> str | None:
    """Name of a method-like signature ``name(params) ... {``, else None."""
    depth = 0
    name = None
    i = 0
    n = len(toks)
    # leading annotations / attributes
    while i < n:
        t = toks[i]
        if t.text == "@" and i + 1 < n:
            i += 2
            while i + 1 < n and toks[i].text == "." and toks[i + 1].kind is TokenKind.IDENTIFIER:
                i += 2
            if i < n and toks[i].text == "(":
                d = 0
                while i < n:
                    d += toks[i].text == "("
                    d -= toks[i].text == ")"
                    i += 1
                    if d == 0:
                        break
            continue
        if t.text == "[" and (i == 0 or toks[i - 1].text in ("]",)):
            d = 0
            while i < n:
                d += toks[i].text == "["
                d -= toks[i].text == "]"
                i += 1
                if d == 0:
                    break
            continue
        break
    for j in range(i, n):
        t = toks[j]
        if depth == 0:
            if t.text in ("=", "->", "=>") or (t.kind is TokenKind.KEYWORD and t.text in _CONTROL):
                return None
            if (name is None and t.kind is TokenKind.IDENTIFIER and j + 1 < n
                    and toks[j + 1].text == "("):
                name = t.text
        if t.text in "([":
            depth += 1
        elif t.text in ")]":
            depth -= 1
    return name


def _segment(sf: SourceFile) -> tuple[list[Unit], list[MethodSpan]]:
    tokens = sf.tokens
    units: list[Unit] = []
    spans: list[MethodSpan] = []
    current: list[int] = []
    paren = 0
    braces: list[str] = []  # "expr" or a scope kind
    method_open: list[tuple[int, str, int]] = []  # (unit index, name, brace depth)
    prev_sig: Token | None = None

    def close_unit() -> None:
        nonlocal current
        if not current:
            return
        toks = [tokens[k] for k in current]
        text = " ".join(_normal_form(t) for t in toks)
        units.append(Unit(sf.path, toks[0].line, toks[-1].end_line, _hash(text), text,
                          current[0], current[-1] + 1))
        current = []

    for idx, tok in enumerate(tokens):
        if tok.kind in TRIVIA:
            continue
        s = tok.text
        if tok.kind is TokenKind.PUNCTUATION:
            if s in "([":
                paren += 1
                current.append(idx)
            elif s in ")]":
                paren = max(0, paren - 1)
                current.append(idx)
            elif s == "{":
                expr = paren > 0 or (prev_sig is not None and prev_sig.kind is not TokenKind.LITERAL
                                     and prev_sig.text in _EXPR_BRACE_PREV)
                if expr or (braces and braces[-1] == "expr"):
                    braces.append("expr")
                    current.append(idx)
                else:
                    current.append(idx)
                    toks = [tokens[k] for k in current]
                    kind = _scope_kind(toks)
                    if kind == "other" and not method_open and (not braces or braces[-1] == "type"):
                        name = _method_name(toks[:-1])
                        if name is not None and braces:
                            kind = "method"
                            method_open.append((len(units), name, len(braces)))
                    braces.append(kind)
                    close_unit()
            elif s == "}":
                popped = braces.pop() if braces else None
                if popped is None:
                    sf.warnings.append(f"{sf.path}:{tok.line}: unbalanced '}}'")
                if popped == "expr":
                    current.append(idx)
                else:
                    close_unit()
                    current.append(idx)
                    close_unit()
                    if popped == "method" and method_open:
                        start, name, _ = method_open.pop()
                        spans.append(MethodSpan(sf.path, (start, len(units)), name))
            elif s == ";":
                current.append(idx)
                if paren == 0 and not (braces and braces[-1] == "expr"):
                    close_unit()
            else:
                current.append(idx)
        else:
            current.append(idx)
        prev_sig = tok
    close_unit()
    if braces:
        sf.warnings.append(f"{sf.path}: {len(braces)} unclosed '{{'")
        logger.warning("%s: unbalanced braces", sf.path)
    if method_open:
        start, name, _ = method_open.pop()
        spans.append(MethodSpan(sf.path, (start, len(units)), name))
    return units, spans


def normalize_to_units(file: SourceFile) -> list[Unit]:
    """Split a file into normalised, comment-free statement units."""
    return file.units


def find_method_spans(file: SourceFile) -> list[MethodSpan]:
    """Method bodies as half-open ranges into the file's unit sequence."""
    return file.method_spans


def write_manifest(corpus: Corpus, path: "str | os.PathLike") -> None:
    Path(path).write_text(json.dumps(corpus.manifest(), indent=2, sort_keys=True) + "\n")


def iter_units(corpus: Corpus) -> Iterable[Unit]:
    for f in corpus.files:
        yield from f.units
