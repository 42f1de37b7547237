"""Text format for one E-function (or E-vector) per file.

Example::

    # J0 and its derivative
    [field]
    minpoly = -1 1

    [system]
    0 | 1
    -1 | -1/z

    [seeds]
    0 = 1 0 -1/4
    names = J0, J0'
    component = 0

``[field]`` holds the minimal polynomial (coefficients from the constant
term up), optional ``automorphisms`` (images of the generator as coordinate
lists separated by ``|``) and ``embedding``.  ``[system]`` has one matrix row
per line with entries in the rational-function grammar (``t`` is the field
generator).  ``[seeds]`` gives Taylor coefficients per component (rationals
or coordinate lists like ``[1,-1]``).  Instead of a system, ``[generator]``
may name a catalog entry: ``name = apq 2 2``.
"""

import os
import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .catalog import field_from_minpoly, resolve
from .efun import DifferentialSystem, EVector
from .errors import ParseError, UsageError
from .exactmath import QQ, NumberField

SECTIONS = ("field", "system", "seeds", "generator")


@dataclass
class Spec:
    field: NumberField = QQ
    rows: list = None                       # list of lists of expression strings
    seeds: dict = dc_field(default_factory=dict)
    names: list = None
    component: int = 0
    generator: str = None

    # -- building ---------------------------------------------------------
    def system(self):
        if self.rows is None:
            return None
        return DifferentialSystem.from_rows(self.field, self.rows)

    def evector(self):
        S = self.system()
        if S is None:
            return None
        seeds = {i: [self.field.element(c) for c in cs] for i, cs in self.seeds.items()}
        return EVector(S, seeds, names=self.names)

    def efunction(self):
        if self.generator is not None:
            return resolve(self.generator)
        F = self.evector()
        if F is None:
            raise UsageError("spec has neither [system] nor [generator]")
        if not 0 <= self.component < F.dim:
            raise UsageError(f"component {self.component} out of range for dimension {F.dim}")
        return F.component(self.component)

    # -- printing ---------------------------------------------------------
    def to_text(self):
        out = []
        if self.field.degree > 1:
            out.append("[field]")
            out.append("minpoly = " + " ".join(str(c) for c in self.field.minpoly))
            if self.field.automorphisms is not None:
                out.append("automorphisms = " + " | ".join(
                    _elt_text(a.image) for a in self.field.automorphisms))
            if self.field.embedding:
                out.append(f"embedding = {self.field.embedding}")
            out.append("")
        if self.generator is not None:
            out.append("[generator]")
            out.append(f"name = {self.generator}")
            return "\n".join(out) + "\n"
        out.append("[system]")
        out.extend(" | ".join(r) for r in self.rows)
        out.append("")
        out.append("[seeds]")
        for i in sorted(self.seeds):
            out.append(f"{i} = " + " ".join(_elt_text(self.field.element(c)) for c in self.seeds[i]))
        if self.names:
            out.append("names = " + ", ".join(self.names))
        if self.component:
            out.append(f"component = {self.component}")
        return "\n".join(out) + "\n"

    def canonical(self):
        """Spec with the system rows re-printed from the parsed matrix."""
        rows = None
        if self.rows is not None:
            rows = self.system().to_rows()
        seeds = {i: [self.field.element(c) for c in cs] for i, cs in self.seeds.items()}
        return Spec(self.field, rows, seeds, self.names, self.component, self.generator)


def _elt_text(a):
    if a.field.degree == 1:
        return str(a.c[0])
    return "[" + ",".join(str(x) for x in a.c) + "]"


def _tokens(text):
    """Whitespace-separated tokens, keeping bracketed groups together."""
    return re.findall(r"\[[^\]]*\]|[^\s\[\]]+", text)


def _parse_elt(tok, field, where):
    tok = tok.strip()
    try:
        if tok.startswith("["):
            body = tok[1:-1].strip()
            coords = [Fraction(x) for x in re.split(r"[,\s]+", body) if x]
            return field.element(coords)
        return field.element(Fraction(tok))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad field element {tok!r} ({where})", tok, 0) from None


def parse_spec(text):
    sections = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"\[(\w+)\]", line)
        if m:
            current = m.group(1).lower()
            if current not in SECTIONS:
                raise ParseError(f"unknown section [{current}] on line {lineno}", raw, 0)
            if current in sections:
                raise ParseError(f"duplicate section [{current}] on line {lineno}", raw, 0)
            sections[current] = []
            continue
        if current is None:
            raise ParseError(f"content before the first section on line {lineno}", raw, 0)
        sections[current].append((lineno, line))

    spec = Spec()
    if "field" in sections:
        kv = _keyvals(sections["field"], "field")
        if "minpoly" not in kv:
            raise ParseError("[field] needs a minpoly", "", 0)
        coeffs = [Fraction(c) for c in kv["minpoly"].split()]
        if "automorphisms" in kv or "embedding" in kv:
            spec.field = NumberField(coeffs, embedding=int(kv.get("embedding", 0)))
            if "automorphisms" in kv:
                imgs = [s.strip() for s in kv["automorphisms"].split("|")]
                spec.field.set_automorphisms(imgs)
        else:
            spec.field = field_from_minpoly(coeffs)
    if "generator" in sections:
        if "system" in sections or "seeds" in sections:
            raise ParseError("[generator] excludes [system] and [seeds]", "", 0)
        kv = _keyvals(sections["generator"], "generator")
        if "name" not in kv:
            raise ParseError("[generator] needs a name", "", 0)
        spec.generator = kv["name"]
        return spec
    if "system" not in sections:
        raise ParseError("spec needs [system] or [generator]", "", 0)
    spec.rows = [[e.strip() for e in line.split("|")] for _, line in sections["system"]]
    N = len(spec.rows)
    if any(len(r) != N for r in spec.rows):
        raise ParseError("[system] matrix must be square", "", 0)
    for lineno, line in sections.get("seeds", []):
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ParseError(f"expected key = value on line {lineno}", line, 0)
        if key == "names":
            spec.names = [n.strip() for n in value.split(",")]
        elif key == "component":
            spec.component = int(value)
        elif key.isdigit():
            spec.seeds[int(key)] = [_parse_elt(t, spec.field, f"line {lineno}") for t in _tokens(value)]
        else:
            raise ParseError(f"unknown seeds key {key!r} on line {lineno}", line, 0)
    return spec


def _keyvals(lines, section):
    kv = {}
    for lineno, line in lines:
        key, sep, value = line.partition("=")
        if not sep:
            raise ParseError(f"expected key = value in [{section}] on line {lineno}", line, 0)
        kv[key.strip()] = value.strip()
    return kv


def load_spec(path):
    with open(path) as fh:
        return parse_spec(fh.read())


def spec_for(f):
    """Spec for an EFunction: system-backed ones as [system]/[seeds], others by catalog name."""
    if f.evector is not None:
        F = f.evector
        seeds = F.seeds_for_output()
        return Spec(F.system.field, F.system.to_rows(), dict(enumerate(seeds)),
                    list(F.names) if F.names else None, f.component or 0, None)
    gen = getattr(f, "catalog_name", None)
    if gen is None:
        raise UsageError(f"{f.name} has no spec-file form")
    return Spec(f.field, generator=gen)


def resolve_spec(arg):
    """A catalog name or a path to a spec file -> EFunction."""
    if os.path.exists(arg):
        return load_spec(arg).efunction()
    return resolve(arg)
