"""End-to-end character table computation."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .brauer import build_brauer_subgroups, induced_characters
from .charstore import write_store
from .classes import TableHeader, table_header
from .classfunction import ClassFunction, canonical_sort
from .cyclotomic import Cyclotomic
from .lll import extract_irreducibles
from .perm import PermGroup
from .pgroup import irreducible_characters


@dataclass
class TableResult:
    header: TableHeader
    irreducibles: list[ClassFunction]
    method: str
    induced_count: int = 0

    @property
    def expected(self) -> int:
        return len(self.header)

    @property
    def complete(self) -> bool:
        return len(self.irreducibles) == self.expected

    def to_json(self) -> dict:
        return {
            "method": self.method,
            "header": self.header.to_json(),
            "found": len(self.irreducibles),
            "expected": self.expected,
            "complete": self.complete,
            "irreducibles": [c.to_strings() for c in self.irreducibles],
        }


def brauer_table(
    G: PermGroup,
    header: TableHeader | None = None,
    jobs: int = 1,
    store: str | Path | None = None,
    use_shortcuts: bool = True,
) -> TableResult:
    header = header or table_header(G)
    subgroups = build_brauer_subgroups(G, header)
    # p-group characters, once per distinct P
    cache: dict[frozenset, list[ClassFunction]] = {}
    for k, B in enumerate(subgroups):
        key = frozenset(B.P.generators)
        if key not in cache:
            seg = None
            if store is not None and B.P.order() > 1:
                seg = Path(store) / f"pgroup-{len(cache)}"
            cache[key] = irreducible_characters(
                B.P, B.p_header, jobs=jobs, use_shortcuts=use_shortcuts, store_dir=seg
            )
        B.p_irr = cache[key]
    induced = induced_characters(header, subgroups, jobs=jobs)
    if store is not None:
        Path(store).mkdir(parents=True, exist_ok=True)
        write_store(Path(store) / "induced.ctbl", header, induced)
    irr, _ = extract_irreducibles(induced, header)
    irr = canonical_sort(irr)
    if store is not None:
        write_store(Path(store) / "irreducibles.ctbl", header, irr)
    return TableResult(header, irr, "brauer", len(induced))


def oracle_table_result(G: PermGroup, header: TableHeader | None = None) -> TableResult:
    from .oracle import oracle_table

    header = header or table_header(G)
    return TableResult(header, oracle_table(G, header), "oracle")


def character_table(
    G: PermGroup,
    method: str = "brauer",
    jobs: int = 1,
    store: str | Path | None = None,
    use_shortcuts: bool = True,
) -> TableResult:
    if method == "brauer":
        return brauer_table(G, jobs=jobs, store=store, use_shortcuts=use_shortcuts)
    if method == "oracle":
        return oracle_table_result(G)
    raise ValueError(f"unknown method {method!r}")


@dataclass
class OrthogonalityReport:
    rows: bool
    columns: bool
    degrees: bool

    def __bool__(self) -> bool:
        return self.rows and self.columns and self.degrees


def check_orthogonality(chars: list[ClassFunction], header: TableHeader) -> OrthogonalityReport:
    """Both orthogonality relations and sum of squared degrees, in exact arithmetic."""
    order = header.group_order
    sizes = header.sizes
    k = len(header)
    conj = [c.conjugate() for c in chars]
    rows = True
    for a, chi in enumerate(chars):
        for b, psi in enumerate(conj):
            s = sum((chi[i] * psi[i] * sizes[i] for i in range(k)), Cyclotomic.from_rational(0))
            if s != (order if a == b else 0):
                rows = False
    cols = len(chars) == k
    if cols:
        for i in range(k):
            for j in range(k):
                s = sum((chars[t][i] * conj[t][j] for t in range(k)), Cyclotomic.from_rational(0))
                if s != (header.classes[i].centralizer_order if i == j else 0):
                    cols = False
    degrees = sum(c.degree**2 for c in chars) == order
    return OrthogonalityReport(rows, cols, degrees)
