"""PTS signature files.

Format::

    -- the calculus of constructions
    sorts: Type, Kind, Box
    axioms: Type : Kind, Kind : Box, Box : Box
    rules: (Type, Type, Type), (Kind, Type, Type), (Type, Kind, Kind), (Kind, Kind, Kind)
"""

import re
from pathlib import Path

from pydantic import ValidationError

from gradia.calculi.ddc.schemas import PtsSignature
from gradia.exceptions import PtsError

_AXIOM = re.compile(r"^\s*([A-Za-z_]\w*)\s*:\s*([A-Za-z_]\w*)\s*$")
_RULE = re.compile(r"\(\s*([A-Za-z_]\w*)\s*,\s*([A-Za-z_]\w*)\s*,\s*([A-Za-z_]\w*)\s*\)")


def load_pts(config: str, name: str = "pts") -> PtsSignature:
    """Parse a signature config.

    Raises:
        PtsError: On syntax errors, unknown sorts or a sort without an axiom
    """
    sorts: list[str] = []
    axioms: list[tuple[str, str]] = []
    rules: list[tuple[str, str, str]] = []
    for lineno, raw in enumerate(config.splitlines(), start=1):
        line = raw.split("--", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition(":")
        if not sep:
            raise PtsError(f"line {lineno}: expected 'key: value'", "Syntax")
        key = key.strip().lower()
        if key == "sorts":
            sorts.extend(s.strip() for s in value.split(",") if s.strip())
        elif key == "axioms":
            for item in value.split(","):
                if not item.strip():
                    continue
                m = _AXIOM.match(item)
                if m is None:
                    raise PtsError(f"line {lineno}: expected 's1 : s2', got {item.strip()!r}", "Syntax")
                axioms.append((m.group(1), m.group(2)))
        elif key == "rules":
            found = _RULE.findall(value)
            if not found and value.strip():
                raise PtsError(f"line {lineno}: expected '(s1, s2, s3)' triples", "Syntax")
            rules.extend(found)
        else:
            raise PtsError(f"line {lineno}: unknown key {key!r}", "Syntax")
    try:
        return PtsSignature(name=name, sorts=sorts, axioms=axioms, rules=rules)
    except ValidationError as e:
        raise PtsError(str(e.errors()[0]["msg"]), "InvalidSignature") from e


def load_pts_file(path: Path) -> PtsSignature:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise PtsError(f"cannot read signature file {path}: {e}", "Unreadable") from e
    return load_pts(text, name=Path(path).stem)


def resolve_pts(source: str, pts_dir: Path) -> PtsSignature:
    """Load a signature given either a path or the name of a built-in."""
    path = Path(source)
    if path.suffix == ".pts" and path.exists():
        return load_pts_file(path)
    builtin = pts_dir / f"{path.stem}.pts"
    if builtin.exists():
        return load_pts_file(builtin)
    raise PtsError(f"no signature file or built-in named {source!r}", "Unreadable")


def type_in_type() -> PtsSignature:
    return PtsSignature(
        name="type-in-type", sorts=["Type"], axioms=[("Type", "Type")], rules=[("Type", "Type", "Type")]
    )


def coc() -> PtsSignature:
    """Type : Kind : Box with the four rules of the calculus of constructions."""
    return PtsSignature(
        name="coc",
        sorts=["Type", "Kind", "Box"],
        axioms=[("Type", "Kind"), ("Kind", "Box"), ("Box", "Box")],
        rules=[
            ("Type", "Type", "Type"),
            ("Kind", "Type", "Type"),
            ("Type", "Kind", "Kind"),
            ("Kind", "Kind", "Kind"),
        ],
    )
