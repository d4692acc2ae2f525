"""SRP-PHAT and SMP-PHAT direction scans.

SRP computes one correlation per pair and scans
``E(i) = sum_p r_p[delays[p][i] mod kN]``. SMP first merges the PHAT spectra
of each group in the frequency domain (conjugating members whose difference
vector points against the reference pair), runs one inverse transform per
group and scans ``E(i) = sum_q s_q[delays[ref_q][i] mod kN]``. Time reversal
in the lookup exactly compensates the conjugation, so both scans yield the
same energy for every direction.

Energies are summed in ascending pair (SRP) or group (SMP) order. The
maximum is the first index attaining it, searched from an initial energy
of -inf.
"""

from concurrent.futures import ThreadPoolExecutor

import numpy as np
import structlog
from numpy.typing import NDArray

from app.core.config import settings
from app.core.exceptions import DimensionMismatchError
from app.gcc.models import PhatSpectra
from app.gcc.services.correlation import gcc_batch
from app.geometry.models import DoaGrid, TdoaTable
from app.localization.models import LocalizationResult, MergedSpectra, Method, OpCounter
from app.merging.models import MergePlan

logger = structlog.get_logger(__name__)


def merge_spectra(
    spectra: PhatSpectra, plan: MergePlan, counter: OpCounter | None = None
) -> MergedSpectra:
    """``S_q = sum_{p in B_q} (R_p if sign = +1 else conj(R_p))``.

    Costs N + 2 real additions for every non-reference member,
    (N + 2)(P - Q) in total.
    """
    if plan.pair_count != spectra.pair_count:
        raise DimensionMismatchError(
            "Merge plan and spectra have different pair counts",
            expected=plan.pair_count,
            actual=spectra.pair_count,
        )

    values = spectra.values
    merged = values[plan.refs]
    extra_members = 0
    for q, group in enumerate(plan.groups):
        for member in group.members:
            if member.pair == group.ref:
                continue
            row = values[member.pair]
            merged[q] += row if member.sign > 0 else np.conj(row)
            extra_members += 1

    if counter is not None:
        counter.additions += (spectra.frame_size + 2) * extra_members
    return MergedSpectra(values=merged, frame_size=spectra.frame_size)


def _best_in_range(energies: NDArray[np.float64], start: int, stop: int) -> tuple[float, int]:
    """(E, -i) of the first maximum within [start, stop)."""
    local = int(np.argmax(energies[start:stop]))
    return float(energies[start + local]), -(start + local)


class Localizer:
    """Scans a fixed grid/table/plan; lookup indices are precomputed offline.

    Args:
        grid: DoA grid the table was built on.
        table: TDoA lookup table.
        plan: Merge plan; required for SMP scans.
        threads: Worker threads for the direction scan (1 = serial).
    """

    def __init__(
        self,
        grid: DoaGrid,
        table: TdoaTable,
        plan: MergePlan | None = None,
        frame_size: int | None = None,
        threads: int = 1,
    ) -> None:
        if table.direction_count != len(grid):
            raise DimensionMismatchError(
                "TDoA table and grid have different direction counts",
                expected=len(grid),
                actual=table.direction_count,
            )
        if plan is not None and plan.pair_count != table.pair_count:
            raise DimensionMismatchError(
                "Merge plan and TDoA table have different pair counts",
                expected=table.pair_count,
                actual=plan.pair_count,
            )

        self.grid = grid
        self.table = table
        self.plan = plan
        self.frame_size = frame_size or settings.FRAME_SIZE
        self.threads = max(1, threads)
        self.length = table.k * self.frame_size

        circular = table.lookup_indices(self.length)
        rows = np.arange(table.pair_count, dtype=np.int64)[:, None] * self.length
        self._srp_lookup = rows + circular
        if plan is not None:
            group_rows = np.arange(plan.q, dtype=np.int64)[:, None] * self.length
            self._smp_lookup = group_rows + circular[plan.refs]

    def _check_spectra(self, spectra: PhatSpectra) -> None:
        if spectra.pair_count != self.table.pair_count:
            raise DimensionMismatchError(
                "Spectra and TDoA table have different pair counts",
                expected=self.table.pair_count,
                actual=spectra.pair_count,
            )
        if spectra.frame_size != self.frame_size:
            raise DimensionMismatchError(
                "Spectra frame size does not match the localizer",
                expected=self.frame_size,
                actual=spectra.frame_size,
            )

    def _scan(
        self,
        correlations: NDArray[np.float64],
        lookup: NDArray[np.int64],
        counter: OpCounter | None,
    ) -> NDArray[np.float64]:
        flat = correlations.ravel()
        directions = lookup.shape[1]

        def accumulate(start: int, stop: int) -> NDArray[np.float64]:
            gathered = flat[lookup[:, start:stop]]
            energy = np.zeros(stop - start)
            for row in gathered:
                energy += row
            return energy

        if self.threads == 1:
            energies = accumulate(0, directions)
        else:
            bounds = np.linspace(0, directions, self.threads + 1).astype(int)
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                parts = pool.map(accumulate, bounds[:-1], bounds[1:])
                energies = np.concatenate(list(parts))

        if counter is not None:
            counter.lookups += lookup.size
            counter.additions += lookup.size
        return energies

    def srp_energies(
        self, spectra: PhatSpectra, counter: OpCounter | None = None
    ) -> NDArray[np.float64]:
        """E(i) for every direction using one inverse transform per pair."""
        self._check_spectra(spectra)
        correlations = gcc_batch(spectra.values, self.table.k)
        if counter is not None:
            counter.iffts += spectra.pair_count
        return self._scan(correlations, self._srp_lookup, counter)

    def smp_energies(
        self, spectra: PhatSpectra, counter: OpCounter | None = None
    ) -> NDArray[np.float64]:
        """E(i) for every direction using one inverse transform per merged group."""
        if self.plan is None:
            raise DimensionMismatchError("SMP scans need a merge plan")
        self._check_spectra(spectra)
        merged = merge_spectra(spectra, self.plan, counter)
        correlations = gcc_batch(merged.values, self.table.k)
        if counter is not None:
            counter.iffts += merged.group_count
        return self._scan(correlations, self._smp_lookup, counter)

    def best(self, energies: NDArray[np.float64]) -> int:
        """First index of the maximum energy, reduced over (E, -i) per chunk."""
        if self.threads == 1:
            return int(np.argmax(energies))
        bounds = np.linspace(0, energies.shape[0], self.threads + 1).astype(int)
        candidates = [
            _best_in_range(energies, start, stop)
            for start, stop in zip(bounds[:-1], bounds[1:], strict=True)
            if stop > start
        ]
        return -max(candidates)[1]

    def locate(
        self,
        spectra: PhatSpectra,
        method: Method | str,
        counter: OpCounter | None = None,
        first_frame: int = 0,
        frames: int = 0,
    ) -> LocalizationResult:
        method = Method(method)
        if method is Method.SRP:
            energies = self.srp_energies(spectra, counter)
        else:
            energies = self.smp_energies(spectra, counter)
        if counter is not None:
            counter.blocks += 1

        index = self.best(energies)
        return LocalizationResult(
            direction=self.grid.dirs[index],
            index=index,
            energy=float(energies[index]),
            method=method,
            first_frame=first_frame,
            frames=frames,
        )


def _check_k(table: TdoaTable, k: int) -> None:
    if k != table.k:
        raise DimensionMismatchError(
            "Interpolation factor differs from the TDoA table", expected=table.k, actual=k
        )


def srp_phat(
    spectra: PhatSpectra,
    table: TdoaTable,
    grid: DoaGrid,
    k: int,
    counter: OpCounter | None = None,
) -> LocalizationResult:
    """Online SRP-PHAT over one block of PHAT spectra."""
    _check_k(table, k)
    localizer = Localizer(grid, table, frame_size=spectra.frame_size)
    return localizer.locate(spectra, Method.SRP, counter)


def smp_phat(
    spectra: PhatSpectra,
    plan: MergePlan,
    table: TdoaTable,
    grid: DoaGrid,
    k: int,
    counter: OpCounter | None = None,
) -> LocalizationResult:
    """Online SMP-PHAT over one block of PHAT spectra."""
    _check_k(table, k)
    localizer = Localizer(grid, table, plan, frame_size=spectra.frame_size)
    return localizer.locate(spectra, Method.SMP, counter)
