from .algebra import Tensor3, unfold, fold, mode_product
from .subspace import SubspaceBasis, RowSpace, IncrementalSubspace, compute_basis, skl_append, \
    reconstruction_error, captured_energy, principal_angles
