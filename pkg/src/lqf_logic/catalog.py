"""
The lattice catalog: the named finite structures searches run over.

Entries are build expressions, so an entry's name is also the recipe that
rebuilds it. Order matters: countermodel search reports the first entry
(in this order) that falsifies an equation.
"""

import logging
from functools import lru_cache
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

from .exceptions import LatticeStructureError, PreconditionError
from .lattice import FiniteOml, build, lattice_from_document, load_document
from .terms import ExpandedStructure, central_surrogate

logger = logging.getLogger(__name__)

CATALOG_SPECS: Tuple[str, ...] = (
    "boolean(1)",
    "boolean(2)",
    "boolean(3)",
    "boolean(4)",
    "mo(1)",
    "mo(2)",
    "mo(3)",
    "mo(4)",
    "product(boolean(1),mo(2))",
    "product(boolean(2),mo(2))",
    "horizontal_sum(boolean(3),boolean(2))",
    "horizontal_sum(boolean(3),boolean(3))",
    "horizontal_sum(mo(2),boolean(3))",
    "product(boolean(1),horizontal_sum(boolean(3),boolean(2)))",
)


@lru_cache(maxsize=None)
def _build_cached(spec: str) -> FiniteOml:
    lattice = build(spec)
    logger.debug(f"built {spec}: {lattice.size} elements")
    return lattice


def catalog(max_size: int = 32) -> List[FiniteOml]:
    """Catalog entries with at most ``max_size`` elements, in catalog order."""
    return [L for L in map(_build_cached, CATALOG_SPECS) if L.size <= max_size]


def lookup(name: str) -> FiniteOml:
    """
    A catalog entry or any other build expression.

    Raises:
        PreconditionError: If the name is neither
    """
    try:
        return _build_cached(name.replace(" ", ""))
    except LatticeStructureError as e:
        raise PreconditionError(f"'{name}' is not a catalog lattice: {e.message}", "lookup")


def scope(names: Optional[Sequence[str]] = None, max_size: int = 32) -> List[FiniteOml]:
    """
    Resolve a scope selector list.

    An empty or missing list means the whole catalog up to ``max_size``.
    Explicitly named lattices are kept even when larger.
    """
    if not names:
        return catalog(max_size)
    return [lookup(name) for name in names]


def resolve_lattice(ref: Union[str, Path]) -> FiniteOml:
    """A lattice from a JSON file path, falling back to a build expression."""
    path = Path(ref)
    if path.suffix == ".json" or path.exists():
        return lattice_from_document(load_document(path))
    return lookup(str(ref))


def resolve_structure(ref: Union[str, Path]) -> ExpandedStructure:
    """
    An expanded structure from a JSON file with w/wstar tables.

    A build expression yields its central surrogate instead.
    """
    path = Path(ref)
    if path.suffix == ".json" or path.exists():
        return ExpandedStructure.from_document(load_document(path))
    return central_surrogate(lookup(str(ref)))
