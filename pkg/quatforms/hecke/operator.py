import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from typing import TYPE_CHECKING, Dict, List, Optional, Tuple

import numpy as np

from quatforms.config import get_config
from quatforms.errors import ConfigValidationError
from quatforms.hecke.descriptor import ConventionProfile, HeckeDescriptor
from quatforms.hecke.space import AutForm, FormSpace
from quatforms.hecke.witness import Witness, witness_table
from quatforms.padic.linalg import charpoly, zero_matrix
from quatforms.padic.series import PadicPoly, polynomial_block, weight_block

if TYPE_CHECKING:
    from quatforms.storage.cache import JsonCache

logger = logging.getLogger(__name__)


@dataclass
class HeckeMatrix:
    """Matrix of an operator on a FormSpace; block (j, j') maps f(d_j') into (Tf)(d_j)."""

    A: np.ndarray
    descriptor: HeckeDescriptor
    space: FormSpace

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    def charpoly(self, method: str = "auto") -> PadicPoly:
        return charpoly(self.A, self.space.ctx, method=method)

    def rows(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self.A]


class HeckeOperator:
    """
    Hecke operator on a space of forms.

    Per-class block columns are built from the witness table, in parallel
    over classes, and cached; ``matrix`` assembles them and ``apply`` uses
    them directly.
    """

    def __init__(
        self,
        desc: HeckeDescriptor,
        space: FormSpace,
        convention: Optional[ConventionProfile] = None,
        max_workers: Optional[int] = None,
        cache: Optional["JsonCache"] = None,
    ):
        config = get_config()
        self.desc = desc
        self.space = space
        self.convention = convention or ConventionProfile(**config["convention"])
        self.max_workers = max_workers or config["max_workers"]
        self.cache = cache
        level = space.cs.level
        desc.check_level(level.p)
        if desc.kind == "Up" and space.ctx.N <= level.n:
            raise ConfigValidationError(f"U{level.p} needs precision N > n = {level.n}")
        self._witnesses: Optional[List[List[Witness]]] = None
        self._blocks: Dict[int, List[Tuple[int, np.ndarray]]] = {}

    @property
    def witnesses(self) -> List[List[Witness]]:
        if self._witnesses is None:
            self._witnesses = witness_table(self.desc, self.space.cs, cache=self.cache)
        return self._witnesses

    def _acting_block(self, w: Witness) -> np.ndarray:
        if not self.convention.transpose_action:
            return weight_block(w.gamma, self.space.k, self.space.block_dim)
        gamma = w.gamma.transpose()
        if self.space.model == "classical":
            return polynomial_block(gamma, self.space.k)
        # transposed gammas leave the monoid, so series spaces reject them
        return weight_block(gamma, self.space.k, self.space.block_dim)

    def _row_blocks(self, row: List[Witness]) -> List[Tuple[int, np.ndarray]]:
        """(j', B) pairs with (Tf)(d_j) = sum of B f(d_j'), summed per j' in coset order."""
        q = self.space.ctx.modulus
        summed: Dict[int, np.ndarray] = {}
        for w in row:
            block = self._acting_block(w)
            if w.target in summed:
                summed[w.target] = (summed[w.target] + block) % q
            else:
                summed[w.target] = block
        return sorted(summed.items())

    def blocks(self) -> Dict[int, List[Tuple[int, np.ndarray]]]:
        missing = [j for j in range(self.space.num_classes) if j not in self._blocks]
        if missing:
            table = self.witnesses
            logger.debug("%s: building %d block rows with %d workers", self.desc.label, len(missing), self.max_workers)
            with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
                futures = {executor.submit(self._row_blocks, table[j]): j for j in missing}
                for future in as_completed(futures):
                    self._blocks[futures[future]] = future.result()
        return self._blocks

    def matrix(self) -> HeckeMatrix:
        space = self.space
        b = space.block_dim
        A = zero_matrix(space.dim, space.dim)
        blocks = self.blocks()
        for j in range(space.num_classes):
            for target, block in blocks[j]:
                A[j * b : (j + 1) * b, target * b : (target + 1) * b] = block
        logger.info("%s on %s assembled", self.desc.label, space.describe())
        return HeckeMatrix(A=A, descriptor=self.desc, space=space)

    def apply(self, f: AutForm) -> AutForm:
        """The transformed form, computed block by block without the full matrix."""
        space = self.space
        q = space.ctx.modulus
        blocks = self.blocks()
        out = np.zeros(space.dim, dtype=object)
        for j in range(space.num_classes):
            acc = np.zeros(space.block_dim, dtype=object)
            for target, block in blocks[j]:
                acc = acc + block.dot(f.coeffs[space.block_slice(target)])
            out[space.block_slice(j)] = acc % q
        return AutForm(space, out)


def hecke_matrix(desc: HeckeDescriptor, space: FormSpace, convention: Optional[ConventionProfile] = None) -> HeckeMatrix:
    return HeckeOperator(desc, space, convention=convention).matrix()


def apply(desc: HeckeDescriptor, f: AutForm, convention: Optional[ConventionProfile] = None) -> AutForm:
    return HeckeOperator(desc, f.space, convention=convention).apply(f)
