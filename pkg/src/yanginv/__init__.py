"""Exact verification toolkit for gl(n) Yangian invariants."""

__version__ = "0.1.0"

from .fock import (  # noqa: F401,E402
    RepKind,
    RepLabel,
    StateVector,
    conjugate,
    projective_ratio,
    symmetric,
)
from .invariants import (  # noqa: F401,E402
    Family,
    InvariantSpec,
    build_invariant,
    four_two,
    grassmannian_eval,
    monodromy_of,
    three_one,
    three_two,
    two_one,
)
from .monodromy import (  # noqa: F401,E402
    MonodromySpec,
    SiteSpec,
    check_invariance,
)
from .bethe import (  # noqa: F401,E402
    bethe_vector,
    solve_q,
    vacuum_eigenvalues,
    wave_function,
)
from .lattice import (  # noqa: F401,E402
    BaxterLattice,
    contract_partition_function,
    invariant_from_lattice,
    perimeter_bethe_z,
    spin_half_lattice,
)
from .rational import Q  # noqa: F401,E402
