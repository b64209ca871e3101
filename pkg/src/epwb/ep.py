"""Extension-property verification, counterexample search and peeling certificates."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .codes import (
    DEFAULT_CODE_BOUND,
    DEFAULT_WORD_BOUND,
    Ambient,
    IsometryWitness,
    enumerate_codes,
    extend_exhaustive,
    extend_to_monomial,
    linear_isomorphisms,
    search_space_size,
)
from .errors import EPWBError, PreconditionError, ResourceBoundError
from .module import (
    FiniteModule,
    character_module,
    embeds_in,
    is_cyclic,
    is_pseudo_injective,
    socle,
)
from .ring import chain_levels, idempotent_generator, is_chain_ring, is_simple_artinian
from .symmetry import SymmetryGroup, aut_group
from .weights import WeightContext

ALL_EXTENDABLE = "all-extendable"
COUNTEREXAMPLE = "counterexample"
INCONCLUSIVE = "inconclusive (bound)"
EXHAUSTED = "exhausted"


class InconsistencyError(EPWBError):
    """Two routes that must agree did not; indicates a bug."""


# -- the scan ----------------------------------------------------------------


@dataclass
class EPReport:
    config: dict
    verdict: str
    witness: IsometryWitness | None = None
    extension_searched: int | None = None
    statistics: dict = field(default_factory=dict)
    per_length: list = field(default_factory=list)
    bound_error: str | None = None
    validation: dict | None = None

    def to_json(self):
        out = {
            "config": self.config,
            "verdict": self.verdict,
            "statistics": self.statistics,
            "per_length": self.per_length,
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
            out["witness"]["extension_candidates_ruled_out"] = self.extension_searched
        if self.bound_error:
            out["bound_error"] = self.bound_error
        if self.validation is not None:
            out["validation"] = self.validation
        return out


_STATE = {}


def _length_state(A, G, kind, n, gen_max, word_bound, code_bound):
    amb = Ambient(A, n)
    codes = enumerate_codes(A, n, gen_max, word_bound, code_bound, ambient=amb)
    ctx = WeightContext(A, kind, G)
    pids = [ctx.profile_ids(c.digits) for c in codes]
    buckets = {}
    for i, (c, p) in enumerate(zip(codes, pids)):
        buckets.setdefault((len(c), tuple(np.sort(p))), []).append(i)
    sizes = {}
    for c in codes:
        sizes[len(c)] = sizes.get(len(c), 0) + 1
    return {"codes": codes, "pids": pids, "buckets": buckets, "sizes": sizes,
            "group": G, "kind": kind, "n": n}


def preserving_isomorphisms(C1, C2, pid1, pid2):
    """Isomorphisms C1 -> C2 under which every codeword keeps its profile id."""
    allowed = [pid2 == pid1[g] for g in C1.local_generators]
    for f in linear_isomorphisms(C1, C2, allowed):
        if (pid1 == pid2[f.images]).all():
            yield f


def _scan_source(i):
    st = _STATE
    codes, pids = st["codes"], st["pids"]
    C1 = codes[i]
    key = (len(C1), tuple(np.sort(pids[i])))
    isometries = 0
    partners = 0
    for j in st["buckets"][key]:
        partners += 1
        for f in preserving_isomorphisms(C1, codes[j], pids[i], pids[j]):
            isometries += 1
            if extend_to_monomial(f, st["group"]) is None:
                return partners, isometries, (j, f.images)
    return partners, isometries, None


def _run_sources(state, jobs):
    global _STATE
    _STATE = state
    indices = range(len(state["codes"]))
    if jobs <= 1 or len(indices) < 2:
        for i in indices:
            res = _scan_source(i)
            yield i, res
            if res[2] is not None:
                return
        return
    # fork inherits _STATE; results are consumed in source order so the
    # first failure and the statistics do not depend on the job count
    import multiprocessing as mp
    ctx = mp.get_context("fork")
    with ProcessPoolExecutor(max_workers=jobs, mp_context=ctx) as ex:
        chunk = max(1, len(indices) // (8 * jobs))
        for i, res in zip(indices, ex.map(_scan_source, indices, chunksize=chunk)):
            yield i, res
            if res[2] is not None:
                ex.shutdown(wait=True, cancel_futures=True)
                return


def _scan(A, G, kind, n_from, n_to, gen_max, jobs, word_bound, code_bound, mode):
    config = {
        "mode": mode, "weight": kind, "n_min": n_from, "n_max": n_to, "gen_max": gen_max,
        "group_order": G.order, "module_order": A.order,
        "word_bound": word_bound, "code_bound": code_bound,
    }
    report = EPReport(config, ALL_EXTENDABLE if mode == "verify" else EXHAUSTED)
    totals = {"codes": 0, "ordered_pairs_equal_size": 0, "pairs_same_distribution": 0,
              "isometries": 0, "extension_space": 0}
    for n in range(n_from, n_to + 1):
        try:
            state = _length_state(A, G, kind, n, gen_max, word_bound, code_bound)
        except ResourceBoundError as exc:
            report.verdict = INCONCLUSIVE
            report.bound_error = f"n={n}: {exc}"
            break
        codes = state["codes"]
        row = {"n": n, "codes": len(codes),
               "ordered_pairs_equal_size": sum(v * v for v in state["sizes"].values()),
               "pairs_same_distribution": 0, "isometries": 0,
               "extension_space_per_isometry": search_space_size(n, G.order)}
        failure = None
        for i, (partners, isometries, fail) in _run_sources(state, jobs):
            row["pairs_same_distribution"] += partners
            row["isometries"] += isometries
            if fail is not None:
                j, images = fail
                failure = IsometryWitness(codes[i], codes[j], images, kind)
                break
        report.per_length.append(row)
        totals["codes"] += row["codes"]
        totals["ordered_pairs_equal_size"] += row["ordered_pairs_equal_size"]
        totals["pairs_same_distribution"] += row["pairs_same_distribution"]
        totals["isometries"] += row["isometries"]
        totals["extension_space"] += row["isometries"] * row["extension_space_per_isometry"]
        if failure is not None:
            report.verdict = COUNTEREXAMPLE
            report.witness = failure
            report.extension_searched = search_space_size(n, G.order)
            break
    report.statistics = totals
    return report


def ep_verify(A: FiniteModule, G: SymmetryGroup | None, kind, n_max=3, gen_max=2, jobs=1,
              word_bound=DEFAULT_WORD_BOUND, code_bound=DEFAULT_CODE_BOUND, n_min=1) -> EPReport:
    """Check every kind-preserving isomorphism between codes up to the bounds.

    The verdict is ``all-extendable`` if each one extends to a G-monomial
    transformation, ``counterexample`` with the first failure in canonical
    order otherwise, and ``inconclusive (bound)`` if an enumeration bound
    was hit before the scan finished.
    """
    G = aut_group(A) if G is None else G
    return _scan(A, G, kind, n_min, n_max, gen_max, jobs, word_bound, code_bound, "verify")


def counterexample_search(A: FiniteModule, G: SymmetryGroup | None, kind, n_from=1, n_to=6,
                          gen_max=2, jobs=1, word_bound=DEFAULT_WORD_BOUND,
                          code_bound=DEFAULT_CODE_BOUND, validate=True) -> EPReport:
    """Scan lengths upward for a kind-preserving, non-extendable isomorphism.

    A found witness is re-validated by the brute-force oracle; running out
    of lengths yields the ``exhausted`` verdict, never a claim that the
    property holds.
    """
    G = aut_group(A) if G is None else G
    report = _scan(A, G, kind, n_from, n_to, gen_max, jobs, word_bound, code_bound, "search")
    if validate and report.witness is not None:
        report.validation = validate_witness(report.witness, G, kind)
    return report


def validate_witness(f: IsometryWitness, G: SymmetryGroup, kind):
    """Independent recheck: preservation on all codewords plus a full n!|G|^n scan."""
    from .weights import profile_preserved

    ctx = WeightContext(f.source.ambient.module, kind, G)
    T, count = extend_exhaustive(f, G)
    expected = search_space_size(f.source.n, G.order)
    return {
        "is_isomorphism": f.is_valid_isomorphism(),
        "weight_preserved": profile_preserved(f, kind, ctx),
        "extension_found": T is not None,
        "candidates_scanned": count,
        "search_space": expected,
        "valid": bool(f.is_valid_isomorphism() and profile_preserved(f, kind, ctx)
                      and T is None and count == expected),
    }


# -- peeling certificates ----------------------------------------------------


@dataclass(frozen=True)
class PeelStage:
    acting: int
    ideal: tuple
    zeros_source: int
    zeros_image: int
    eliminated_source: int
    eliminated_image: int

    def to_json(self):
        return [self.acting, list(self.ideal), self.zeros_source, self.zeros_image,
                self.eliminated_source, self.eliminated_image]


@dataclass
class PreservationCertificate:
    """Per-codeword peeling stages; each stage matched on both sides."""

    method: str
    entries: list  # (source word, [PeelStage, ...])

    complete = True

    def aw_counts(self, word_index):
        """Annihilator counts implied by the stages of one codeword."""
        counts = {}
        for st in self.entries[word_index][1]:
            if st.eliminated_source:
                counts[st.ideal] = counts.get(st.ideal, 0) + st.eliminated_source
        return counts

    def to_json(self, words=None):
        """Stage lists per codeword; ``words`` restricts to those source words."""
        return {"method": self.method,
                "codewords": [{"word": w, "stages": [s.to_json() for s in stages]}
                              for w, stages in self.entries if words is None or w in words]}


@dataclass
class PeelViolation:
    method: str
    codeword: int
    stage: PeelStage

    complete = False

    def to_json(self, words=None):
        return {"method": self.method, "violation": {"word": self.codeword,
                                                     "stage": self.stage.to_json()}}


def chain_peel_certificate(f: IsometryWitness, levels=None):
    """Act by each chain representative and match annihilated-coordinate counts.

    For level ``(I_j, x_j)`` the coordinates killed by ``x_j`` are exactly those
    whose annihilator contains ``I_j``; since ``x_j f(c) = f(x_j c)``, Hamming
    preservation forces equal counts, and successive differences give the
    annihilator weight.
    """
    A = f.source.ambient.module
    R = A.ring
    if levels is None:
        if not is_chain_ring(R):
            raise PreconditionError("chain peeling needs a chain ring")
        levels = chain_levels(R)
    src, dst = f.codeword_pairs()
    entries = []
    for w, c, b in zip(f.source.words, src, dst):
        stages = []
        prev_c = prev_b = 0
        for ideal, x in levels:
            zc = int((A.act[x][c] == A.zero).sum())
            zb = int((A.act[x][b] == A.zero).sum())
            st = PeelStage(int(x), ideal.elements, zc, zb, zc - prev_c, zb - prev_b)
            if zc != zb:
                return PeelViolation("chain", int(w), st)
            stages.append(st)
            prev_c, prev_b = zc, zb
        entries.append((int(w), stages))
    return PreservationCertificate("chain", entries)


def idempotent_peel_certificate(f: IsometryWitness):
    """Peel coordinates by maximal annihilator, acting with its idempotent generator."""
    A = f.source.ambient.module
    R = A.ring
    if not is_simple_artinian(R):
        raise PreconditionError("idempotent peeling needs a simple matrix ring")
    ann = {a: A.annihilator(a) for a in range(A.order)}
    src, dst = f.codeword_pairs()
    gen_cache = {}
    entries = []
    for w, c, b in zip(f.source.words, src, dst):
        rem_c = list(range(len(c)))
        rem_b = list(range(len(b)))
        stages = []
        while rem_c or rem_b:
            present = {ann[int(c[i])] for i in rem_c} | {ann[int(b[i])] for i in rem_b}
            maximal = [I for I in present if not any(I < J for J in present)]
            ideal = min(maximal, key=lambda I: I.sort_key())
            if ideal not in gen_cache:
                e = idempotent_generator(R, ideal)
                if e is None:
                    raise PreconditionError(f"no idempotent generates {list(ideal.elements)}")
                gen_cache[ideal] = e
            e = gen_cache[ideal]
            kc = A.act[e][c] == A.zero
            kb = A.act[e][b] == A.zero
            elim_c = [i for i in rem_c if kc[i]]
            elim_b = [i for i in rem_b if kb[i]]
            st = PeelStage(int(e), ideal.elements, int(kc.sum()), int(kb.sum()),
                           len(elim_c), len(elim_b))
            if st.zeros_source != st.zeros_image or len(elim_c) != len(elim_b):
                return PeelViolation("idempotent", int(w), st)
            stages.append(st)
            rem_c = [i for i in rem_c if not kc[i]]
            rem_b = [i for i in rem_b if not kb[i]]
        entries.append((int(w), stages))
    return PreservationCertificate("idempotent", entries)


def peel_certificate(f: IsometryWitness):
    R = f.source.ambient.module.ring
    if is_chain_ring(R):
        return chain_peel_certificate(f)
    if is_simple_artinian(R):
        return idempotent_peel_certificate(f)
    raise PreconditionError("peeling needs a chain ring or a simple matrix ring")


def certify(A: FiniteModule, n_max=3, gen_max=2, word_bound=DEFAULT_WORD_BOUND,
            code_bound=DEFAULT_CODE_BOUND, n_min=1, keep=True):
    """Certificate for every Hamming-preserving isometry up to the bounds.

    Returns a dict with per-isometry records and agreement statistics
    between certificate completion and direct aw-preservation.
    """
    from .weights import profile_preserved

    R = A.ring
    if is_chain_ring(R):
        method, levels = "chain", chain_levels(R)
    elif is_simple_artinian(R):
        method, levels = "idempotent", None
    else:
        raise PreconditionError("certify needs a chain ring or a simple matrix ring")
    aw_ctx = WeightContext(A, "aw")
    records = []
    stats = {"isometries": 0, "complete": 0, "aw_preserved": 0, "agree": 0}
    for n in range(n_min, n_max + 1):
        state = _length_state(A, None, "hamming", n, gen_max, word_bound, code_bound)
        codes, pids = state["codes"], state["pids"]
        for i, C1 in enumerate(codes):
            key = (len(C1), tuple(np.sort(pids[i])))
            for j in state["buckets"][key]:
                for f in preserving_isomorphisms(C1, codes[j], pids[i], pids[j]):
                    f.kind = "hamming"
                    cert = (chain_peel_certificate(f, levels) if method == "chain"
                            else idempotent_peel_certificate(f))
                    aw = profile_preserved(f, "aw", aw_ctx)
                    stats["isometries"] += 1
                    stats["complete"] += cert.complete
                    stats["aw_preserved"] += aw
                    stats["agree"] += cert.complete == aw
                    if keep:
                        records.append((f, cert, aw))
    return {"method": method, "statistics": stats, "records": records}


# -- the Remark ----------------------------------------------------------------


def remark_implication_check(A: FiniteModule, G: SymmetryGroup | None, n_max=2, gen_max=2,
                             word_bound=DEFAULT_WORD_BOUND, code_bound=DEFAULT_CODE_BOUND):
    """Instance-level check that swc- and aw-preserving maps preserve Hamming weight.

    Also checks that swc preservation implies aw preservation, since
    automorphisms fix annihilators.
    """
    G = aut_group(A) if G is None else G
    ctx = {k: WeightContext(A, k, G) for k in ("hamming", "swc", "aw")}
    out = {"swc_isometries": 0, "aw_isometries": 0, "violations": []}
    for n in range(1, n_max + 1):
        amb = Ambient(A, n)
        codes = enumerate_codes(A, n, gen_max, word_bound, code_bound, ambient=amb)
        pid = {k: [c.profile_ids(cd.digits) for cd in codes] for k, c in ctx.items()}
        for kind in ("swc", "aw"):
            buckets = {}
            for i, c in enumerate(codes):
                buckets.setdefault((len(c), tuple(np.sort(pid[kind][i]))), []).append(i)
            for i, C1 in enumerate(codes):
                for j in buckets[(len(C1), tuple(np.sort(pid[kind][i])))]:
                    for f in preserving_isomorphisms(C1, codes[j], pid[kind][i], pid[kind][j]):
                        out[f"{kind}_isometries"] += 1
                        implied = ["hamming"] + (["aw"] if kind == "swc" else [])
                        for other in implied:
                            if not (pid[other][i] == pid[other][j][f.images]).all():
                                out["violations"].append(
                                    {"n": n, "kind": kind, "lost": other,
                                     "isometry": f.to_json()})
    out["holds"] = not out["violations"]
    return out


# -- classification ------------------------------------------------------------


@dataclass
class Classification:
    pseudo_injective: bool
    socle: tuple
    socle_cyclic: bool
    embeds_in_character_module: bool
    embedding: tuple | None
    aut_order: int
    chain_ring: bool
    simple_matrix_ring: bool

    @property
    def predicted_swc_ep(self):
        return "holds" if self.socle_cyclic else "fails"

    def to_json(self):
        return {
            "pseudo_injective": self.pseudo_injective,
            "socle": list(self.socle),
            "socle_cyclic": self.socle_cyclic,
            "embeds_in_character_module": self.embeds_in_character_module,
            "embedding": list(self.embedding) if self.embedding else None,
            "aut_order": self.aut_order,
            "chain_ring": self.chain_ring,
            "simple_matrix_ring": self.simple_matrix_ring,
            "predicted_swc_ep": self.predicted_swc_ep,
        }


def classify(A: FiniteModule, G: SymmetryGroup | None = None) -> Classification:
    """Socle and character-module routes to the swc verdict; they must agree."""
    G = aut_group(A) if G is None else G
    S = socle(A)
    cyclic = is_cyclic(A, S)
    emb = embeds_in(A, character_module(A.ring))
    if cyclic != (emb is not None):
        raise InconsistencyError(
            f"socle cyclic={cyclic} but embedding into character module "
            f"{'found' if emb is not None else 'absent'}"
        )
    return Classification(
        pseudo_injective=bool(is_pseudo_injective(A, G)),
        socle=S.elements,
        socle_cyclic=cyclic,
        embeds_in_character_module=emb is not None,
        embedding=emb.images if emb is not None else None,
        aut_order=G.order,
        chain_ring=is_chain_ring(A.ring),
        simple_matrix_ring=is_simple_artinian(A.ring),
    )


def predict(cls: Classification, kind, full_group=True):
    """Expected EP verdict for this weight, or None when theory is silent."""
    if kind == "swc":
        if full_group:
            return cls.predicted_swc_ep
        return "holds" if cls.embeds_in_character_module else None
    if kind == "aw":
        return cls.predicted_swc_ep if cls.pseudo_injective else None
    if not cls.socle_cyclic:
        return "fails"
    if cls.pseudo_injective and (cls.chain_ring or cls.simple_matrix_ring):
        return "holds"
    return None
