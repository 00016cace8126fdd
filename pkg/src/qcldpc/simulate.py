"""Sum-product decoding over BPSK/AWGN and Monte Carlo FER estimation.

Transmits the all-zero codeword (standard for linear codes on a symmetric
channel, and it avoids building a generator matrix), maps bit b to symbol
1 - 2b, adds Gaussian noise with sigma^2 = 1 / (2 * rate * 10^(EbN0/10)),
and decodes with a flooding-schedule tanh-rule sum-product decoder.

Frames are processed in seeded batches: batch i of sweep point k draws its
generator from SeedSequence(seed, spawn_key=(k, i)), so a sweep is
bit-for-bit reproducible and batches can run on worker processes without
changing the result.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.stats import binomtest

from .exponent import ExponentMatrix
from .tanner import TannerGraph, lift

_PHI_FLOOR = 1e-12  # keeps phi = -log tanh(x/2) finite


@dataclass(frozen=True)
class DecoderConfig:
    max_iterations: int = 50
    early_stop: bool = True
    llr_clamp: float = 25.0

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError(f"need max_iterations >= 1, got {self.max_iterations}")
        if self.llr_clamp <= 0:
            raise ValueError(f"need llr_clamp > 0, got {self.llr_clamp}")


@dataclass(frozen=True)
class FerPoint:
    eb_n0_db: float
    frames_sent: int
    frame_errors: int
    fer: float
    ci_low: float
    ci_high: float
    seed: int

    def csv_row(self) -> str:
        return (
            f"{self.eb_n0_db:g},{self.frames_sent},{self.frame_errors},"
            f"{self.fer:.8g},{self.ci_low:.8g},{self.ci_high:.8g},{self.seed}"
        )


CSV_HEADER = "eb_n0_db,frames,frame_errors,fer,ci_low,ci_high,seed"


def awgn_llrs(bits: np.ndarray, eb_n0_db: float, rate: float, rng: np.random.Generator) -> np.ndarray:
    """Channel LLRs for the given codeword bits (1-D or a batch of rows)."""
    if not 0 < rate < 1:
        raise ValueError(f"rate must be in (0,1), got {rate}")
    bits = np.asarray(bits)
    symbols = 1.0 - 2.0 * bits
    sigma2 = 1.0 / (2.0 * rate * 10.0 ** (eb_n0_db / 10.0))
    received = symbols + rng.standard_normal(bits.shape) * np.sqrt(sigma2)
    return 2.0 * received / sigma2


class SpaDecoder:
    """Flooding sum-product decoder on a fixed Tanner graph.

    Messages live on edges in check-major order; the variable-major view
    is a precomputed permutation. decode_batch handles a whole block of
    frames at once (rows of the LLR matrix).
    """

    def __init__(self, t: TannerGraph, cfg: DecoderConfig | None = None):
        self.graph = t
        self.cfg = cfg or DecoderConfig()
        edges = [(chk, var) for chk in range(t.n_chk) for var in t.chk_adj[chk]]
        self.n_edges = len(edges)
        self.edge_var_c = np.array([var for _, var in edges], dtype=np.int64)
        chk_deg = np.array(t.chk_degrees(), dtype=np.int64)
        var_deg = np.array(t.var_degrees(), dtype=np.int64)
        self.chk_ptr = np.concatenate(([0], np.cumsum(chk_deg)))[:-1]
        self.chk_rep = np.repeat(np.arange(t.n_chk), chk_deg)
        order = np.lexsort((self.chk_rep, self.edge_var_c))
        self.to_var_order = order
        self.to_chk_order = np.empty_like(order)
        self.to_chk_order[order] = np.arange(self.n_edges)
        self.var_ptr = np.concatenate(([0], np.cumsum(var_deg)))[:-1]
        self.var_rep = np.repeat(np.arange(t.n_var), var_deg)
        if np.any(var_deg == 0) or np.any(chk_deg == 0):
            raise ValueError("decoder requires every node to have degree >= 1")

    def _phi(self, x: np.ndarray) -> np.ndarray:
        return -np.log(np.tanh(np.maximum(x, _PHI_FLOOR) / 2.0))

    def decode_batch(self, llrs: np.ndarray):
        """Returns (hard_decisions, converged, iterations) per frame."""
        cfg = self.cfg
        llrs = np.atleast_2d(np.asarray(llrs, dtype=np.float64))
        n_frames, n_var = llrs.shape
        if n_var != self.graph.n_var:
            raise ValueError(f"LLR length {n_var} != variable count {self.graph.n_var}")

        clamp = cfg.llr_clamp
        v2c = np.clip(llrs[:, self.edge_var_c], -clamp, clamp)
        bits = (llrs < 0).astype(np.uint8)
        converged = np.zeros(n_frames, dtype=bool)
        iters = np.full(n_frames, cfg.max_iterations, dtype=np.int64)
        active = np.arange(n_frames)
        out_bits = bits.copy()

        for it in range(1, cfg.max_iterations + 1):
            mag = np.abs(v2c)
            sgn = v2c < 0
            phi = self._phi(mag)
            phi_sum = np.add.reduceat(phi, self.chk_ptr, axis=1)[:, self.chk_rep]
            neg_sum = np.add.reduceat(sgn, self.chk_ptr, axis=1)[:, self.chk_rep]
            c2v_mag = self._phi(np.maximum(phi_sum - phi, _PHI_FLOOR))
            c2v_sign = 1.0 - 2.0 * ((neg_sum - sgn) % 2)
            c2v = np.clip(c2v_sign * c2v_mag, -clamp, clamp)

            c2v_v = c2v[:, self.to_var_order]
            totals = np.add.reduceat(c2v_v, self.var_ptr, axis=1)
            posterior = llrs[active] + totals
            v2c_v = np.clip(posterior[:, self.var_rep] - c2v_v, -clamp, clamp)
            v2c = v2c_v[:, self.to_chk_order]

            frame_bits = (posterior < 0).astype(np.uint8)
            syndrome = np.add.reduceat(frame_bits[:, self.edge_var_c], self.chk_ptr, axis=1) % 2
            ok = ~syndrome.any(axis=1)

            out_bits[active] = frame_bits
            newly = np.flatnonzero(ok & ~converged[active])
            if newly.size:
                converged[active[newly]] = True
                iters[active[newly]] = it
            if cfg.early_stop:
                keep = np.flatnonzero(~ok)
                if keep.size == 0:
                    break
                if keep.size < active.size:
                    active = active[keep]
                    v2c = v2c[keep]
        if not cfg.early_stop:
            # all iterations run; convergence is judged on the final output
            final_syn = (
                np.add.reduceat(out_bits[:, self.edge_var_c], self.chk_ptr, axis=1) % 2
            )
            converged = ~final_syn.any(axis=1)
            iters = np.full(n_frames, cfg.max_iterations, dtype=np.int64)
        return out_bits, converged, iters


def spa_decode(t: TannerGraph, llrs: np.ndarray, cfg: DecoderConfig | None = None):
    """Single-frame decode: (hard decisions, converged flag, iterations used)."""
    decoder = SpaDecoder(t, cfg)
    bits, converged, iters = decoder.decode_batch(np.asarray(llrs)[None, :])
    return bits[0], bool(converged[0]), int(iters[0])


def syndrome(t: TannerGraph, bits: np.ndarray) -> np.ndarray:
    """H x over GF(2), computed directly from the adjacency lists."""
    bits = np.asarray(bits, dtype=np.int64)
    return np.array(
        [sum(bits[v] for v in t.chk_adj[c]) % 2 for c in range(t.n_chk)], dtype=np.int64
    )


def gf2_rank(t: TannerGraph) -> int:
    """Rank of the parity-check matrix over GF(2), via bitset elimination."""
    rows = []
    for c in range(t.n_chk):
        r = 0
        for v in t.chk_adj[c]:
            r |= 1 << v
        rows.append(r)
    rank = 0
    pivots: dict[int, int] = {}
    for r in rows:
        while r:
            msb = r.bit_length() - 1
            if msb in pivots:
                r ^= pivots[msb]
            else:
                pivots[msb] = r
                rank += 1
                break
    return rank


def code_rates(m: ExponentMatrix) -> tuple[float, float]:
    """(nominal design rate (eta-gamma)/eta, true rate from the GF(2) rank)."""
    t = lift(m)
    nominal = (m.eta - m.gamma) / m.eta
    true_rate = (t.n_var - gf2_rank(t)) / t.n_var
    return nominal, true_rate


def _run_batch(args):
    decoder, n_var, eb_n0_db, rate, seed, point_idx, batch_idx, batch_size = args
    rng = np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(point_idx, batch_idx))
    )
    llrs = awgn_llrs(np.zeros((batch_size, n_var), dtype=np.uint8), eb_n0_db, rate, rng)
    bits, _, _ = decoder.decode_batch(llrs)
    return int(np.count_nonzero(bits.any(axis=1)))


def estimate_fer(
    m: ExponentMatrix,
    eb_n0_db_list,
    *,
    seed: int,
    min_errors: int = 100,
    max_frames: int = 10_000_000,
    cfg: DecoderConfig | None = None,
    batch_size: int = 256,
    workers: int = 1,
) -> list[FerPoint]:
    """All-zero-codeword Monte Carlo FER sweep.

    Each point collects frames until min_errors frame errors or max_frames
    frames. Eb/N0 normalization uses the nominal rate (eta-gamma)/eta; the
    rank-true rate is available from code_rates. Results are reproducible
    bit for bit from (matrix, config, seed) and independent of the worker
    count.
    """
    if not m.fully_connected:
        raise ValueError("simulation requires a fully connected matrix")
    if min_errors < 1 or max_frames < 1:
        raise ValueError("need min_errors >= 1 and max_frames >= 1")
    t = lift(m)
    decoder = SpaDecoder(t, cfg)
    nominal_rate = (m.eta - m.gamma) / m.eta
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        points = []
        for point_idx, eb_n0_db in enumerate(eb_n0_db_list):
            frames = 0
            errors = 0
            batch_idx = 0
            while errors < min_errors and frames < max_frames:
                wave = []
                budget = max_frames - frames
                for _ in range(max(workers, 1)):
                    if budget <= 0:
                        break
                    size = min(batch_size, budget)
                    budget -= size
                    wave.append(
                        (decoder, t.n_var, eb_n0_db, nominal_rate, seed, point_idx, batch_idx, size)
                    )
                    batch_idx += 1
                if pool is not None:
                    results = list(pool.map(_run_batch, wave))
                else:
                    results = [_run_batch(w) for w in wave]
                # sequential accounting in batch order keeps the totals
                # independent of the worker count
                for spec, batch_errors in zip(wave, results):
                    frames += spec[-1]
                    errors += batch_errors
                    if errors >= min_errors or frames >= max_frames:
                        break
            fer = errors / frames
            ci = binomtest(errors, frames).proportion_ci(confidence_level=0.95, method="exact")
            points.append(FerPoint(eb_n0_db, frames, errors, fer, ci.low, ci.high, seed))
        return points
    finally:
        if pool is not None:
            pool.shutdown()
