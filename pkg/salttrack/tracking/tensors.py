from typing import List, Optional, NamedTuple, Tuple, Sequence

from ..tensor import Tensor3, IncrementalSubspace, SubspaceBasis, reconstruction_error
from ..tensor.subspace import SubspaceDims


class TrialExtension(NamedTuple):
    patch_s: Tensor3
    patch_c: Optional[Tensor3]
    subspace_s: IncrementalSubspace
    subspace_c: Optional[IncrementalSubspace]

    def error(self, weight_s: float, weight_c: float, modes: Sequence[int]) -> float:
        basis_c = self.subspace_c.basis() if self.subspace_c is not None else None
        return reconstruction_error(self.patch_s, self.patch_c, self.subspace_s.basis(), basis_c,
                                    weight_s, weight_c, modes)


class TensorPair:
    """Amplitude and contrast patches of boundary points sharing one texture.

    The contrast side is absent when the tracker runs without the contrast attribute.
    """

    def __init__(self, patch_dims: Tuple[int, int], subspace_dims: SubspaceDims, with_contrast: bool = True):
        self.patch_dims = patch_dims
        self.subspace_dims = subspace_dims
        self.with_contrast = with_contrast
        self.patches_s: List[Tensor3] = []
        self.patches_c: List[Tensor3] = []
        self.subspace_s = IncrementalSubspace(patch_dims, subspace_dims)
        self.subspace_c: Optional[IncrementalSubspace] = \
            IncrementalSubspace(patch_dims, subspace_dims) if with_contrast else None

    @property
    def member_count(self) -> int:
        return len(self.patches_s)

    @property
    def S(self) -> Tensor3:
        return _stack(self.patches_s)

    @property
    def C(self) -> Optional[Tensor3]:
        return _stack(self.patches_c) if self.with_contrast else None

    @property
    def basis_s(self) -> SubspaceBasis:
        return self.subspace_s.basis()

    @property
    def basis_c(self) -> Optional[SubspaceBasis]:
        return self.subspace_c.basis() if self.subspace_c is not None else None

    def trial(self, patch_s: Tensor3, patch_c: Optional[Tensor3]) -> TrialExtension:
        """Bases of the tensors with one more patch pair appended, leaving this pair unchanged."""
        if not self.with_contrast:
            patch_c = None
        subspace_c = self.subspace_c.extend(patch_c) if self.subspace_c is not None else None
        return TrialExtension(patch_s, patch_c, self.subspace_s.extend(patch_s), subspace_c)

    def commit(self, trial: TrialExtension) -> None:
        self.patches_s.append(trial.patch_s)
        self.subspace_s = trial.subspace_s
        if self.with_contrast:
            self.patches_c.append(trial.patch_c)
            self.subspace_c = trial.subspace_c

    def append(self, patch_s: Tensor3, patch_c: Optional[Tensor3]) -> None:
        self.commit(self.trial(patch_s, patch_c))

    def clone(self) -> "TensorPair":
        copy = TensorPair(self.patch_dims, self.subspace_dims, self.with_contrast)
        copy.patches_s = list(self.patches_s)
        copy.patches_c = list(self.patches_c)
        copy.subspace_s = self.subspace_s
        copy.subspace_c = self.subspace_c
        return copy

    def __repr__(self) -> str:
        return f"TensorPair(members={self.member_count}, contrast={self.with_contrast})"


def _stack(patches: List[Tensor3]) -> Tensor3:
    result = patches[0]
    for patch in patches[1:]:
        result = result.stack(patch)
    return result
