"""Edge-colored complete graphs, Gallai partitions and cycle Ramsey searches."""

from ._core import (
    Coloring,
    GallaiLabError,
    ParseError,
    PreconditionError,
    SearchReport,
    build_extremal_odd,
    build_ramsey_cycle_lower,
    canonical_key,
    colored_path_split,
    dirac_hamiltonian,
    erdos_gallai_path,
    even_cycle_bounds,
    find_mono_cycle,
    find_mono_path,
    find_rainbow_triangle,
    gallai_partition,
    ramsey_formula,
    random_gallai,
    read_report,
    recolor_small_parts,
    search_gallai_ramsey,
    search_ramsey,
    substitute,
    validate_partition,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
