"""Presented groups with machine-checkable generator and relator sets.

A presentation couples a decidable generator family (per-family arity and
predicate clauses) with a list of relator schemas.  A template schema is a
fixed letter shape whose index entries are polynomial expressions in the
schema parameters, together with a parameter constraint; instantiating it at
any admissible parameter vector yields one relator word, and membership of a
word in the instance set is decided by matching the shape and solving for
the parameters.  Callback schemas (arbitrary word builders) are accepted for
extensibility but are only semi-decidable and cannot be serialized.

Word triviality is searched as an explicit product of conjugated relator
instances

    w = c_1 r_1 c_1^-1 . c_2 r_2 c_2^-1 ... c_n r_n c_n^-1

and every positive answer carries a certificate of exactly that shape, which
`verify_certificate` replays by free reduction alone, independently of how
the search found it.  The searcher peels relator instances that match
subwords of the goal first (which is how certificates for words built from
relators are found quickly) and falls back to a fair dovetailed enumeration
of (conjugator, relator) pairs, so a proof is found for every trivial word
given enough fuel; relator and conjugator enumeration orders are frozen and
golden-filed.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional, Sequence

from .predicates import (Poly, Pred, TRUE, conj, const, eq,
                         shift_pred, solve_unknown, var)
from .rationals import RatVec, enumerate_vectors, format_rat, parse_rat, unpair
from .words import (EMPTY, GenSym, Word, concat, format_word, free_reduce,
                    intern_parts, invert, parse_word)


class ArityMismatch(Exception):
    """Generator index arity exceeds the presentation dimension."""


class SemiDecidableOnly(Exception):
    """Relator membership was queried on a merely enumerable schema set."""


@dataclass(frozen=True)
class GenClause:
    family: str
    arity: int
    pred: Pred

    def admits(self, index: RatVec) -> bool:
        return len(index) == self.arity and self.pred.eval(index)


@dataclass(frozen=True)
class LetterTemplate:
    family: str
    exp: int
    index: tuple[Poly, ...] = ()

    def instantiate(self, params: Sequence[Fraction]) -> tuple[GenSym, int]:
        return GenSym(self.family, tuple(e.eval(params) for e in self.index)), self.exp

    def instantiate_id(self, params: Sequence[Fraction]) -> int:
        gid = intern_parts(self.family, tuple(e.eval(params) for e in self.index))
        return gid if self.exp > 0 else -gid


@dataclass(frozen=True)
class RelatorSchema:
    """Template relator family: fixed letter shape, polynomial index entries."""

    arity: int
    template: tuple[LetterTemplate, ...]
    constraint: Pred = TRUE
    mode: str = "decidable"
    label: str = ""

    def admits(self, params: Sequence[Fraction]) -> bool:
        return len(params) == self.arity and self.constraint.eval(params)

    def instantiate(self, params: Sequence[Fraction], check: bool = True) -> Word:
        params = tuple(Fraction(x) for x in params)
        if check and not self.admits(params):
            raise ValueError(f"parameters {params} violate the schema constraint")
        return Word(tuple(lt.instantiate_id(params) for lt in self.template))

    def match_prefix(self, letters: Sequence[tuple[GenSym, int]],
                     length: int) -> Optional[RatVec]:
        """Parameters making template[0:length] equal the given letters.

        Solvable parameters must be recoverable from the observed prefix:
        bare-variable index entries bind directly, composite entries are
        solved one unknown at a time.  Returns None when the shapes differ,
        some parameter stays undetermined, the solved instance disagrees
        with an observation, or the constraint fails.
        """
        tpl = self.template[:length]
        if len(letters) != len(tpl):
            return None
        obs: list[tuple[Poly, Fraction]] = []
        for (gen, exp), t in zip(letters, tpl):
            if gen.family != t.family or exp != t.exp or len(gen.index) != len(t.index):
                return None
            obs.extend(zip(t.index, gen.index))
        known: dict[int, Fraction] = {}
        progress = True
        while progress and len(known) < self.arity:
            progress = False
            for expr, val in obs:
                missing = [v for v in expr.vars() if v not in known]
                if not missing:
                    continue
                if expr.op == "var":
                    known[expr.k] = val
                    progress = True
                elif len(missing) == 1:
                    got = solve_unknown(expr, val, known)
                    if got is not None:
                        known[got[0]] = got[1]
                        progress = True
        if len(known) < self.arity:
            return None
        params = tuple(known.get(i, Fraction(0)) for i in range(self.arity))
        for expr, val in obs:
            if expr.eval(params) != val:
                return None
        if not self.constraint.eval(params):
            return None
        return params

    def match(self, w: Word) -> Optional[RatVec]:
        return self.match_prefix(w.letters, len(self.template))

    def inverse(self) -> "RelatorSchema":
        tpl = tuple(LetterTemplate(t.family, -t.exp, t.index)
                    for t in reversed(self.template))
        return RelatorSchema(self.arity, tpl, self.constraint, self.mode,
                             self.label + "^-1")


@dataclass(frozen=True)
class CallbackSchema:
    """Relator family given by an arbitrary word builder; only enumerable."""

    arity: int
    builder: Callable[[RatVec], Word]
    constraint_cb: Callable[[RatVec], bool] = lambda params: True
    label: str = ""
    mode: str = "enumerable"
    template: tuple = ()

    def admits(self, params: Sequence[Fraction]) -> bool:
        return len(params) == self.arity and self.constraint_cb(tuple(params))

    def instantiate(self, params: Sequence[Fraction], check: bool = True) -> Word:
        params = tuple(Fraction(x) for x in params)
        if check and not self.admits(params):
            raise ValueError(f"parameters {params} violate the schema constraint")
        return self.builder(params)

    def match(self, w: Word) -> Optional[RatVec]:
        raise SemiDecidableOnly(f"schema {self.label!r} is enumerable only")

    def match_prefix(self, letters, length):
        return None


@dataclass(frozen=True)
class Presentation:
    label: str
    dim: int
    generators: tuple[GenClause, ...]
    relators: tuple = ()

    def __post_init__(self):
        for c in self.generators:
            if c.arity > self.dim:
                raise ValueError(f"clause arity {c.arity} exceeds dim {self.dim}")

    @property
    def decidable(self) -> bool:
        return all(s.mode == "decidable" for s in self.relators)


def check_generator(p: Presentation, g: GenSym) -> bool:
    if len(g.index) > p.dim:
        raise ArityMismatch(
            f"index arity {len(g.index)} exceeds presentation dimension {p.dim}")
    return any(c.family == g.family and c.admits(g.index) for c in p.generators)


def check_word(p: Presentation, w: Word) -> bool:
    """Every letter of w is a generator of p."""
    return all(check_generator(p, g) for g, _ in w.letters)


def check_relator(p: Presentation, w: Word) -> bool:
    """Is w an instance of some relator schema of p (first match wins)?"""
    bad = [s for s in p.relators if s.mode != "decidable"]
    if bad:
        raise SemiDecidableOnly(
            f"presentation {p.label!r} has enumerable schemas "
            f"({', '.join(s.label or '?' for s in bad)})")
    return any(s.match(w) is not None for s in p.relators)


# -- frozen enumeration streams -------------------------------------------------

_SCAN_STEP = 20_000  # raw indices examined per stream request


class _Streams:
    """Lazily materialized relator and conjugator streams of one presentation.

    Relators: raw vector index ascending, then schema order, skipping
    parameters of wrong arity or violating the constraint.  Conjugators:
    empty word first, then by (length, letter-index tuple) with each
    generator symbol contributing +1 before -1.
    """

    def __init__(self, p: Presentation):
        self.p = p
        self.relators: list[tuple[int, RatVec, Word]] = []
        self._rel_raw = 0
        self.letters: list[tuple[GenSym, int]] = []
        self._let_raw = 0

    def relator(self, i: int) -> Optional[tuple[int, RatVec, Word]]:
        budget = _SCAN_STEP
        while len(self.relators) <= i and budget > 0:
            vec = enumerate_vectors(self._rel_raw)
            self._rel_raw += 1
            budget -= 1
            for si, s in enumerate(self.p.relators):
                if s.arity == len(vec) and s.admits(vec):
                    self.relators.append((si, vec, s.instantiate(vec, check=False)))
        return self.relators[i] if i < len(self.relators) else None

    def letter(self, i: int) -> Optional[tuple[GenSym, int]]:
        budget = _SCAN_STEP
        while len(self.letters) <= i and budget > 0:
            vec = enumerate_vectors(self._let_raw)
            self._let_raw += 1
            budget -= 1
            for c in self.p.generators:
                if c.admits(vec):
                    g = GenSym(c.family, vec)
                    self.letters.append((g, 1))
                    self.letters.append((g, -1))
        return self.letters[i] if i < len(self.letters) else None

    def conjugator(self, i: int) -> Optional[Word]:
        if i == 0:
            return EMPTY
        length1, m = unpair(i - 1)
        length = length1 + 1
        idxs = _nat_tuple(length, m)
        letters = []
        for k in idxs:
            got = self.letter(k)
            if got is None:
                return None
            letters.append(got)
        return Word.from_letters(letters)


def _nat_tuple(d: int, m: int) -> tuple[int, ...]:
    if d == 1:
        return (m,)
    a, b = unpair(m)
    return (a,) + _nat_tuple(d - 1, b)


_STREAMS: dict[int, tuple[Presentation, _Streams]] = {}


def streams_for(p: Presentation) -> _Streams:
    got = _STREAMS.get(id(p))
    if got is None or got[0] is not p:
        got = (p, _Streams(p))
        _STREAMS[id(p)] = got
    return got[1]


_MAX_SCAN_CALLS = 500  # ~10^7 raw indices before an index is declared unreachable


def enumerate_relators(p: Presentation, index: int) -> Word:
    """index-th relator instance in the frozen dovetail order."""
    st = streams_for(p)
    for _ in range(_MAX_SCAN_CALLS):
        got = st.relator(index)
        if got is not None:
            return got[2]
        if not p.relators:
            break
    raise ValueError(f"relator index {index} not reachable in {p.label!r}")


def enumerate_conjugators(p: Presentation, index: int) -> Word:
    st = streams_for(p)
    for _ in range(_MAX_SCAN_CALLS):
        got = st.conjugator(index)
        if got is not None:
            return got
    raise ValueError(f"conjugator index {index} not reachable in {p.label!r}")


# -- constructors ----------------------------------------------------------------

def _retag_clause(c: GenClause, tag: int) -> GenClause:
    return GenClause(c.family, c.arity + 1,
                     conj(c.pred, eq(var(c.arity), const(tag))))


def _retag_schema(s, tag: int):
    if isinstance(s, RelatorSchema):
        tpl = tuple(LetterTemplate(t.family, t.exp, t.index + (const(tag),))
                    for t in s.template)
        return RelatorSchema(s.arity, tpl, s.constraint, s.mode, s.label)
    def build(params, _s=s, _tag=tag):
        w = _s.instantiate(params, check=False)
        return Word.from_letters(
            (GenSym(g.family, g.index + (Fraction(_tag),)), e) for g, e in w.letters)
    return CallbackSchema(s.arity, build, s.admits, s.label, "enumerable")


def free_product(p1: Presentation, p2: Presentation,
                 label: str = "") -> Presentation:
    """Disjointly tagged union: factor generators get a final index 1 or 2."""
    gens = tuple(_retag_clause(c, 1) for c in p1.generators) + \
        tuple(_retag_clause(c, 2) for c in p2.generators)
    rels = tuple(_retag_schema(s, 1) for s in p1.relators) + \
        tuple(_retag_schema(s, 2) for s in p2.relators)
    return Presentation(label or f"{p1.label}*{p2.label}",
                        max(p1.dim, p2.dim) + 1, gens, rels)


@dataclass(frozen=True)
class WordFamily:
    """A parametric word inside one factor: letter templates plus constraint."""

    arity: int
    letters: tuple[LetterTemplate, ...]
    constraint: Pred = TRUE


@dataclass(frozen=True)
class IsoRealization:
    """A realized isomorphism between subgroups: mutually inverse word maps.

    `forward` and `backward` send generator words across; the optional
    predicates delimit the domain and range generator families.  Template
    forms (when a map is expressible as letter templates) are what the
    presentation constructors can turn into decidable relator schemas;
    callables are accepted everywhere but leave schemas enumerable.
    """

    forward: Callable[[Word], Word]
    backward: Callable[[Word], Word]
    domain_pred: Optional[Pred] = None
    range_pred: Optional[Pred] = None

    def check_inverse_on(self, samples: Iterable[Word]) -> bool:
        """Spot-check that backward(forward(w)) reduces back to w."""
        for w in samples:
            if free_reduce(self.backward(self.forward(w))) != free_reduce(w):
                return False
        return True


def amalgamate(p1: Presentation, p2: Presentation,
               a_family: Optional[WordFamily],
               image: Optional[tuple[LetterTemplate, ...]] = None,
               forward=None,
               label: str = "") -> Presentation:
    """Free product of p1 and p2 with the identification image(v) = v.

    `a_family` describes the identified subgroup generators v inside p1 (over
    shared parameters); their images inside p2 come either as letter
    templates over the same parameters (decidable result) or as a word map /
    IsoRealization (enumerable result).  With no family at all this is the
    plain free product.
    """
    base = free_product(p1, p2, label=label)
    if a_family is None:
        return base
    if isinstance(forward, IsoRealization):
        forward = forward.forward
    fam_tagged = tuple(LetterTemplate(t.family, t.exp, t.index + (const(1),))
                       for t in a_family.letters)
    if image is not None:
        img_tagged = tuple(LetterTemplate(t.family, t.exp, t.index + (const(2),))
                           for t in image)
        inv_fam = tuple(LetterTemplate(t.family, -t.exp, t.index)
                        for t in reversed(fam_tagged))
        schema = RelatorSchema(a_family.arity, img_tagged + inv_fam,
                               a_family.constraint, "decidable", "amalgam")
    else:
        if forward is None:
            raise ValueError("amalgamate needs either letter templates or a word map")

        def build(params):
            v = Word.from_letters(t.instantiate(params) for t in a_family.letters)
            img = forward(v)
            v2 = Word.from_letters(
                (GenSym(g.family, g.index + (Fraction(1),)), e) for g, e in v.letters)
            img2 = Word.from_letters(
                (GenSym(g.family, g.index + (Fraction(2),)), e) for g, e in img.letters)
            return concat(img2, invert(v2))

        schema = CallbackSchema(a_family.arity, build,
                                lambda ps: a_family.constraint.eval(ps), "amalgam")
    return Presentation(base.label, base.dim, base.generators,
                        base.relators + (schema,))


@dataclass(frozen=True)
class StableSpec:
    """A family of stable letters: tag, index arity, index predicate."""

    family: str
    arity: int
    pred: Pred = TRUE


@dataclass(frozen=True)
class ActionRule:
    """How conjugation by the stable letters moves one base letter family.

    Variables 0..stable.arity-1 are the stable-letter index, the following
    `arity` variables the base letter index; `image` letters are templates
    over that combined parameter vector (None means the letter is fixed).
    """

    family: str
    arity: int
    guard: Pred = TRUE
    image: Optional[tuple[LetterTemplate, ...]] = None


def hnn_extend(p: Presentation, stable: StableSpec,
               rules: Sequence[ActionRule], label: str = "") -> Presentation:
    """Add stable letters and the commutation relators image(v) t v^-1 t^-1."""
    gens = p.generators + (GenClause(stable.family, stable.arity, stable.pred),)
    new_rels = []
    sa = stable.arity
    stable_vars = tuple(var(i) for i in range(sa))
    for rule in rules:
        letter_vars = tuple(var(sa + i) for i in range(rule.arity))
        image = rule.image
        if image is None:
            image = (LetterTemplate(rule.family, 1, letter_vars),)
        base_pred = TRUE
        for c in p.generators:
            if c.family == rule.family and c.arity == rule.arity:
                base_pred = shift_pred(c.pred, sa)
                break
        tpl = image + (
            LetterTemplate(stable.family, 1, stable_vars),
            LetterTemplate(rule.family, -1, letter_vars),
            LetterTemplate(stable.family, -1, stable_vars),
        )
        # stable.pred already lives on variables 0..arity-1 of the combined vector
        constraint = conj(stable.pred, rule.guard, base_pred)
        new_rels.append(RelatorSchema(sa + rule.arity, tpl, constraint,
                                      "decidable", f"hnn-{rule.family}"))
    return Presentation(label or f"{p.label};{stable.family}",
                        max(p.dim, stable.arity), gens,
                        p.relators + tuple(new_rels))


# -- word problem search -----------------------------------------------------------

@dataclass(frozen=True)
class CertEntry:
    conjugator: Word
    relator: Word
    schema_index: int
    params: RatVec


@dataclass(frozen=True)
class Certificate:
    entries: tuple[CertEntry, ...]

    def to_json(self):
        return [{"conjugator": format_word(e.conjugator),
                 "relator": format_word(e.relator),
                 "schema": e.schema_index,
                 "params": [format_rat(x) for x in e.params]}
                for e in self.entries]

    @staticmethod
    def from_json(data) -> "Certificate":
        return Certificate(tuple(
            CertEntry(parse_word(e["conjugator"]), parse_word(e["relator"]),
                      e["schema"], tuple(parse_rat(x) for x in e["params"]))
            for e in data))


def verify_certificate(p: Presentation, w: Word, cert: Certificate) -> bool:
    """Replay the certificate by free reduction; independent of the search."""
    acc = EMPTY
    for e in cert.entries:
        if not (0 <= e.schema_index < len(p.relators)):
            return False
        schema = p.relators[e.schema_index]
        if not schema.admits(e.params):
            return False
        if schema.instantiate(e.params, check=False) != e.relator:
            return False
        acc = concat(acc, e.conjugator, e.relator, invert(e.conjugator))
    return acc == free_reduce(w)


def _goal_moves(p: Presentation, u: Word) -> list[tuple[CertEntry, Word]]:
    """Certificate steps that strictly shorten u, by schema-prefix matching."""
    out = []
    ids = u.ids
    letters = u.letters
    n = len(letters)
    schemas = [(si, s, s.template[0]) for si, s in enumerate(p.relators)
               if s.mode == "decidable" and s.template]
    for i in range(n):
        gen_i, exp_i = letters[i]
        for si, schema, head in schemas:
            if (head.family != gen_i.family or head.exp != exp_i
                    or len(head.index) != len(gen_i.index)):
                continue
            top = min(len(schema.template), n - i)
            for L in range(top, 0, -1):
                params = schema.match_prefix(letters[i:i + L], L)
                if params is None:
                    continue
                tail = Word(tuple(t.instantiate_id(params)
                                  for t in schema.template[L:]))
                u1 = concat(Word(ids[:i]), invert(tail), Word(ids[i + L:]))
                if len(u1) >= n:
                    continue
                inst = schema.instantiate(params, check=False)
                entry = CertEntry(Word(ids[:i]), inst, si, params)
                out.append((entry, u1))
    return out


def wp_semidecide(p: Presentation, w: Word, fuel: int) -> Optional[Certificate]:
    """Search for a conjugated-relator-product certificate that w = 1 in p.

    Returns a Certificate (replayable via verify_certificate) or None when
    the node budget is exhausted.  The search is deterministic: goal-directed
    peeling moves first, then the frozen blind (conjugator, relator) dovetail,
    explored in cost order, so a result found at some fuel is returned
    unchanged at any higher fuel.
    """
    if not check_word(p, w):
        raise ValueError("word contains letters outside the generator set")
    target = free_reduce(w)
    if len(target) == 0:
        return Certificate(())
    # fresh streams: the search is a pure function of (p, w, fuel), so a
    # proof found at some fuel is reproduced verbatim at any higher fuel
    st = _Streams(p)
    has_blind = len(p.relators) > 0

    counter = 0
    # heap entries: (priority, seq, word, chain, move_index)
    heap: list[tuple[int, int, Word, tuple, int]] = [(0, 0, target, (), 0)]
    goal_cache: dict[tuple, list] = {}
    best: dict[tuple, int] = {target.ids: 0}

    def goal_moves(u: Word):
        got = goal_cache.get(u.ids)
        if got is None:
            got = _goal_moves(p, u)
            goal_cache[u.ids] = got
        return got

    for _ in range(fuel):
        if not heap:
            return None
        prio, seq, u, chain, k = heapq.heappop(heap)
        moves = goal_moves(u)
        ucost = best.get(u.ids, prio)

        # schedule this state's next move
        nk = k + 1
        if nk < len(moves) or has_blind:
            w_next = 1 if nk < len(moves) else 2 + (nk - len(moves))
            counter += 1
            heapq.heappush(heap, (ucost + w_next, counter, u, chain, nk))

        if k < len(moves):
            entry, u1 = moves[k]
            edge = 1
        else:
            if not has_blind:
                continue
            ci, ri = unpair(k - len(moves))
            rel = st.relator(ri)
            conj_w = st.conjugator(ci)
            if rel is None or conj_w is None:
                continue  # stream not materialized this far yet; fuel spent
            si, params, rword = rel
            entry = CertEntry(conj_w, rword, si, params)
            u1 = concat(conj_w, invert(rword), invert(conj_w), u)
            edge = 2 + (k - len(moves))

        nchain = chain + (entry,)
        if len(u1) == 0:
            return Certificate(nchain)
        ncost = ucost + edge
        old = best.get(u1.ids)
        if old is not None and old <= ncost:
            continue
        best[u1.ids] = ncost
        counter += 1
        heapq.heappush(heap, (ncost + 1, counter, u1, nchain, 0))
    return None


# -- JSON serialization ------------------------------------------------------------

def presentation_to_json(p: Presentation) -> dict:
    rels = []
    for s in p.relators:
        if not isinstance(s, RelatorSchema):
            raise ValueError(f"schema {s.label!r} is callback-based and cannot be serialized")
        rels.append({
            "arity": s.arity,
            "mode": s.mode,
            "label": s.label,
            "letters": [{"family": t.family, "exp": t.exp,
                         "index": [e.to_json() for e in t.index]}
                        for t in s.template],
            "constraint": s.constraint.to_json(),
        })
    return {
        "label": p.label,
        "dim": p.dim,
        "generators": [{"family": c.family, "arity": c.arity,
                        "pred": c.pred.to_json()} for c in p.generators],
        "relators": rels,
    }


def presentation_from_json(data: dict) -> Presentation:
    gens = tuple(GenClause(g["family"], g["arity"], Pred.from_json(g["pred"]))
                 for g in data["generators"])
    rels = []
    for r in data["relators"]:
        tpl = tuple(LetterTemplate(t["family"], t["exp"],
                                   tuple(Poly.from_json(e) for e in t["index"]))
                    for t in r["letters"])
        rels.append(RelatorSchema(r["arity"], tpl, Pred.from_json(r["constraint"]),
                                  r.get("mode", "decidable"), r.get("label", "")))
    return Presentation(data["label"], data["dim"], gens, tuple(rels))


def load_presentation(path: str) -> Presentation:
    with open(path) as fh:
        return presentation_from_json(json.load(fh))


def save_presentation(p: Presentation, path: str):
    with open(path, "w") as fh:
        json.dump(presentation_to_json(p), fh, indent=2)
