"""entkit: decide, certify, and quantify entanglement of small quantum states.

Dense density-matrix tooling for bipartite systems up to local dimension 8
and for three qubits: separability criteria (PPT, reduction, majorization),
witness operators, the two-pair recurrence distillation protocol, and
numerical entanglement-measure estimates.
"""

from .kernel import KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = ["KERNEL_BACKEND", "__version__"]
