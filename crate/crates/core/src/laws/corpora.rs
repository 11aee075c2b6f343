//! Exhaustive and seeded random instance families for the shipped adapters.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::adapters::{CatModel, PosetModel, RelModel, ScottModel};
use super::corpus::{spread, Corpus, SquareCell};
use super::model::{FixpointModel, Square, ThinCell};
use crate::cat::{
    enumerate_functors, enumerate_nat_isos, enumerate_nat_transfs, samples, FinCategory, FunctorData, NatTransfData,
};
use crate::error::Result;
use crate::poset::{monotone_maps, pointed_posets_up_to_iso, MonotoneMap, PointedPoset};
use crate::rel::{
    mrel_compose, multisets_up_to, preorders_up_to_iso, promote, scott_compose, scott_promote, FinSet, IdealRel,
    Multiset, MultisetRel, Preorder,
};

pub type PosetCorpus = Corpus<MonotoneMap, ThinCell<MonotoneMap>>;
pub type RelCorpus = Corpus<MultisetRel, ThinCell<MultisetRel>>;
pub type ScottCorpus = Corpus<IdealRel, ThinCell<IdealRel>>;
pub type CatCorpus = Corpus<FunctorData, NatTransfData>;

/// Sizes and draw counts for the thin-model corpora.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusSpec {
    pub exhaustive_max: usize,
    pub random_draws: usize,
    pub random_min: usize,
    pub random_max: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec { exhaustive_max: 3, random_draws: 1000, random_min: 4, random_max: 5 }
    }
}

/// Cap on the derived families (stacked squares and the like).
const DERIVED_CAP: usize = 400;

fn thin_square<C: Clone + PartialEq, M: FixpointModel<Cell = C, Two = ThinCell<C>>>(
    m: &M,
    s: &C,
    f: &C,
    g: &C,
) -> Result<Option<Square<C, ThinCell<C>>>> {
    let sf = m.compose(s, f)?;
    let gs = m.compose(g, s)?;
    Ok((sf == gs).then(|| Square { s: s.clone(), f: f.clone(), g: g.clone(), gamma: ThinCell::witness(sf, gs) }))
}

struct PosetMaps {
    posets: Vec<Arc<PointedPoset>>,
    cache: HashMap<(usize, usize, bool), Vec<MonotoneMap>>,
}

impl PosetMaps {
    fn new(sizes: impl IntoIterator<Item = usize>) -> Self {
        let posets = sizes.into_iter().flat_map(pointed_posets_up_to_iso).map(Arc::new).collect();
        PosetMaps { posets, cache: HashMap::new() }
    }

    fn maps(&mut self, a: usize, b: usize, strict: bool) -> &[MonotoneMap] {
        let (pa, pb) = (self.posets[a].clone(), self.posets[b].clone());
        self.cache.entry((a, b, strict)).or_insert_with(|| monotone_maps(&pa, &pb, strict))
    }
}

/// Every monotone endomap, opposite pair and commuting square on pointed
/// posets up to `exhaustive_max` elements (triples up to 2), then random
/// instances at the random sizes.
pub fn poset_corpus(spec: &CorpusSpec, rng: &mut ChaCha8Rng) -> Result<PosetCorpus> {
    let m = PosetModel::KLEENE;
    let mut c = PosetCorpus::default();
    let mut small = PosetMaps::new(1..=spec.exhaustive_max);
    let n = small.posets.len();
    for a in 0..n {
        c.endos.extend_from_slice(small.maps(a, a, false));
    }
    for a in 0..n {
        for b in 0..n {
            let fs = small.maps(a, b, false).to_vec();
            let gs = small.maps(b, a, false).to_vec();
            for f in &fs {
                for g in &gs {
                    c.pairs.push((f.clone(), g.clone()));
                }
            }
            let ss = small.maps(a, b, true).to_vec();
            let fa = small.maps(a, a, false).to_vec();
            let gb = small.maps(b, b, false).to_vec();
            for s in &ss {
                for f in &fa {
                    for g in &gb {
                        if let Some(sq) = thin_square(&m, s, f, g)? {
                            c.squares.push(sq);
                        }
                    }
                }
            }
        }
    }
    let tiny: Vec<usize> = (0..n).filter(|&i| small.posets[i].len() <= 2).collect();
    for &a in &tiny {
        for &b in &tiny {
            for &d in &tiny {
                let (x, y, z) = (
                    small.maps(a, b, false).to_vec(),
                    small.maps(b, d, false).to_vec(),
                    small.maps(d, a, false).to_vec(),
                );
                for f in &x {
                    for g in &y {
                        for h in &z {
                            c.triples.push((f.clone(), g.clone(), h.clone()));
                        }
                    }
                }
            }
        }
    }
    if spec.random_draws > 0 && spec.random_min <= spec.random_max {
        let mut big = PosetMaps::new(spec.random_min..=spec.random_max);
        let k = big.posets.len();
        for _ in 0..spec.random_draws {
            let a = rng.gen_range(0..k);
            c.endos.push(big.maps(a, a, false).choose(rng).expect("identity exists").clone());
            let (a, b) = (rng.gen_range(0..k), rng.gen_range(0..k));
            let f = big.maps(a, b, false).choose(rng).expect("constants exist").clone();
            let g = big.maps(b, a, false).choose(rng).expect("constants exist").clone();
            c.pairs.push((f, g));
            let (x, y, z) = (rng.gen_range(0..k), rng.gen_range(0..k), rng.gen_range(0..k));
            let f = big.maps(x, y, false).choose(rng).expect("constants exist").clone();
            let g = big.maps(y, z, false).choose(rng).expect("constants exist").clone();
            let h = big.maps(z, x, false).choose(rng).expect("constants exist").clone();
            c.triples.push((f, g, h));
            c.squares.push(random_poset_square(&m, &mut big, k, rng)?);
        }
    }
    c.derive_from_squares(&m, DERIVED_CAP)?;
    c.with_identity_cells(&m);
    Ok(c)
}

fn random_poset_square(
    m: &PosetModel,
    maps: &mut PosetMaps,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Square<MonotoneMap, ThinCell<MonotoneMap>>> {
    loop {
        let (a, b) = (rng.gen_range(0..k), rng.gen_range(0..k));
        let s = maps.maps(a, b, true).choose(rng).expect("constant bottom is strict").clone();
        let f = maps.maps(a, a, false).choose(rng).expect("identity exists").clone();
        let candidates = maps.maps(b, b, false).to_vec();
        let mut found = Vec::new();
        for g in &candidates {
            if let Some(sq) = thin_square(m, &s, &f, g)? {
                found.push(sq);
            }
        }
        if let Some(sq) = found.choose(rng) {
            return Ok(sq.clone());
        }
    }
}

/// All relations `A → B` whose rules use multisets of size at most `max`.
fn all_mrels(a: &Arc<FinSet>, b: &Arc<FinSet>, max: usize) -> Vec<MultisetRel> {
    let rules: Vec<(Multiset, usize)> =
        multisets_up_to(a.len(), max).into_iter().flat_map(|m| (0..b.len()).map(move |y| (m.clone(), y))).collect();
    assert!(rules.len() < 20, "relation space too large to enumerate");
    (0u32..1 << rules.len())
        .map(|bits| MultisetRel {
            source: a.clone(),
            target: b.clone(),
            pairs: rules.iter().enumerate().filter(|(i, _)| bits & (1 << i) != 0).map(|(_, r)| r.clone()).collect(),
        })
        .collect()
}

fn all_linear(a: &Arc<FinSet>, b: &Arc<FinSet>) -> Vec<MultisetRel> {
    let cells: Vec<(usize, usize)> = (0..a.len()).flat_map(|x| (0..b.len()).map(move |y| (x, y))).collect();
    (0u32..1 << cells.len())
        .map(|bits| {
            let s: BTreeSet<(usize, usize)> =
                cells.iter().enumerate().filter(|(i, _)| bits & (1 << i) != 0).map(|(_, &p)| p).collect();
            promote(a, b, &s)
        })
        .collect()
}

fn random_mrel(a: &Arc<FinSet>, b: &Arc<FinSet>, rng: &mut ChaCha8Rng) -> MultisetRel {
    let rules: Vec<(Multiset, usize)> =
        multisets_up_to(a.len(), 2).into_iter().flat_map(|m| (0..b.len()).map(move |y| (m.clone(), y))).collect();
    let p = rng.gen_range(1.0..4.0) / rules.len() as f64 * b.len() as f64 / 2.0;
    MultisetRel {
        source: a.clone(),
        target: b.clone(),
        pairs: rules.into_iter().filter(|_| rng.gen_bool(p.min(1.0))).collect(),
    }
}

/// Exhaustive relational instances (endos at `|A| ≤ 3` with unary rules and
/// `|A| ≤ 2` with binary ones, pairs and squares at `|A|, |B| ≤ 2`, triples
/// at size 1) plus random ones at the random sizes.
pub fn rel_corpus(spec: &CorpusSpec, rng: &mut ChaCha8Rng) -> Result<RelCorpus> {
    let m = RelModel::CLOSURE;
    let mut c = RelCorpus::default();
    let sets: Vec<Arc<FinSet>> = (0..=spec.exhaustive_max).map(|n| Arc::new(FinSet::letters(n))).collect();
    for a in &sets {
        let max = if a.len() <= 2 { 2 } else { 1 };
        c.endos.extend(all_mrels(a, a, max));
    }
    let two = &sets[..sets.len().min(3)];
    for a in two {
        for b in two {
            let fs = all_mrels(a, b, 1);
            let gs = all_mrels(b, a, 1);
            for f in &fs {
                for g in &gs {
                    c.pairs.push((f.clone(), g.clone()));
                }
            }
            let fa = all_mrels(a, a, 1);
            let gb = all_mrels(b, b, 1);
            for s in all_linear(a, b) {
                for f in &fa {
                    let sf = mrel_compose(&s, f)?;
                    for g in &gb {
                        if mrel_compose(g, &s)? == sf {
                            c.squares.push(Square {
                                s: s.clone(),
                                f: f.clone(),
                                g: g.clone(),
                                gamma: ThinCell::witness(sf.clone(), sf.clone()),
                            });
                        }
                    }
                }
            }
        }
    }
    let one = &sets[..sets.len().min(2)];
    for a in one {
        for b in one {
            for d in one {
                for f in all_mrels(a, b, 1) {
                    for g in all_mrels(b, d, 1) {
                        for h in all_mrels(d, a, 1) {
                            c.triples.push((f.clone(), g.clone(), h));
                        }
                    }
                }
            }
        }
    }
    if spec.random_draws > 0 && spec.random_min <= spec.random_max {
        let size = |rng: &mut ChaCha8Rng| Arc::new(FinSet::letters(rng.gen_range(spec.random_min..=spec.random_max)));
        for i in 0..spec.random_draws {
            let a = size(rng);
            c.endos.push(random_mrel(&a, &a, rng));
            let b = size(rng);
            c.pairs.push((random_mrel(&a, &b, rng), random_mrel(&b, &a, rng)));
            let d = size(rng);
            c.triples.push((random_mrel(&a, &b, rng), random_mrel(&b, &d, rng), random_mrel(&d, &a, rng)));
            let sq = random_rel_square(&m, i % 3, spec, rng)?;
            c.squares.push(sq);
        }
    }
    c.derive_from_squares(&m, DERIVED_CAP)?;
    c.with_identity_cells(&m);
    Ok(c)
}

/// A random commuting square: a bijective renaming, the empty relation
/// against a `g` without nullary rules, or an inclusion `A ⊂ B` with `g`
/// extending `f` by rules that mention new elements.
fn random_rel_square(
    m: &RelModel,
    kind: usize,
    spec: &CorpusSpec,
    rng: &mut ChaCha8Rng,
) -> Result<Square<MultisetRel, ThinCell<MultisetRel>>> {
    let n = rng.gen_range(spec.random_min..=spec.random_max);
    let a = Arc::new(FinSet::letters(n));
    let f = random_mrel(&a, &a, rng);
    let (s, g) = match kind {
        0 => {
            let mut pi: Vec<usize> = (0..n).collect();
            pi.shuffle(rng);
            let s = promote(&a, &a, &(0..n).map(|x| (x, pi[x])).collect());
            let pairs = f.pairs.iter().map(|(ms, y)| (ms.map(|x| pi[x]), pi[*y])).collect();
            (s, MultisetRel { source: a.clone(), target: a.clone(), pairs })
        }
        1 => {
            let b = Arc::new(FinSet::letters(rng.gen_range(spec.random_min..=spec.random_max)));
            let mut g = random_mrel(&b, &b, rng);
            g.pairs.retain(|(ms, _)| !ms.is_empty());
            (MultisetRel::empty(&a, &b), g)
        }
        _ => {
            let b = Arc::new(FinSet::letters(n + 1));
            let s = promote(&a, &b, &(0..n).map(|x| (x, x)).collect());
            let mut extra = random_mrel(&b, &b, rng);
            extra.pairs.retain(|(ms, _)| ms.support().any(|x| x == n));
            let pairs = f.pairs.iter().cloned().chain(extra.pairs).collect();
            (s, MultisetRel { source: b.clone(), target: b, pairs })
        }
    };
    let sf = FixpointModel::compose(m, &s, &f)?;
    let gs = FixpointModel::compose(m, &g, &s)?;
    Ok(Square { s, f, g, gamma: ThinCell::witness(sf, gs) })
}

fn all_ideal_rels(a: &Arc<Preorder>, b: &Arc<Preorder>, max: usize) -> Vec<IdealRel> {
    let sources: Vec<BTreeSet<usize>> = multisets_up_to(a.len(), max)
        .into_iter()
        .map(|m| m.support().collect::<BTreeSet<usize>>())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let rules: Vec<(BTreeSet<usize>, usize)> =
        sources.iter().flat_map(|u| (0..b.len()).map(move |y| (u.clone(), y))).collect();
    assert!(rules.len() < 20, "relation space too large to enumerate");
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for bits in 0u32..1 << rules.len() {
        let gens = rules.iter().enumerate().filter(|(i, _)| bits & (1 << i) != 0).map(|(_, r)| r.clone());
        let r = IdealRel::new(a.clone(), b.clone(), gens).expect("generators are in range");
        if seen.insert(r.generators().clone()) {
            out.push(r);
        }
    }
    out
}

fn all_scott_linear(a: &Arc<Preorder>, b: &Arc<Preorder>) -> Vec<IdealRel> {
    let mut seen = std::collections::HashSet::new();
    let cells: Vec<(usize, usize)> = (0..a.len()).flat_map(|x| (0..b.len()).map(move |y| (x, y))).collect();
    let mut out = Vec::new();
    for bits in 0u32..1 << cells.len() {
        let s: BTreeSet<(usize, usize)> =
            cells.iter().enumerate().filter(|(i, _)| bits & (1 << i) != 0).map(|(_, &p)| p).collect();
        let r = scott_promote(a, b, &s);
        if seen.insert(r.generators().clone()) {
            out.push(r);
        }
    }
    out
}

fn random_preorder(n: usize, rng: &mut ChaCha8Rng) -> Preorder {
    let names = (0..n).map(crate::rel::letter).collect();
    let p = rng.gen_range(0.05..0.3);
    let m = (0..n).map(|i| (0..n).map(|j| i != j && rng.gen_bool(p)).collect()).collect();
    Preorder::from_relation(names, m)
}

fn random_ideal_rel(a: &Arc<Preorder>, b: &Arc<Preorder>, rng: &mut ChaCha8Rng) -> IdealRel {
    let k = rng.gen_range(0..=b.len() + 2);
    let gens = (0..k).map(|_| {
        let size = rng.gen_range(0..=2.min(a.len()));
        let u: BTreeSet<usize> = (0..size).map(|_| rng.gen_range(0..a.len())).collect();
        (u, rng.gen_range(0..b.len()))
    });
    IdealRel::new(a.clone(), b.clone(), gens.collect::<Vec<_>>()).expect("generators are in range")
}

/// Scott-model instances: every preorder up to isomorphism at sizes up to
/// `exhaustive_max` with unary generators (binary at size ≤ 2); pairs and
/// squares at size ≤ 2; random instances at the random sizes.
pub fn scott_corpus(spec: &CorpusSpec, rng: &mut ChaCha8Rng) -> Result<ScottCorpus> {
    let m = ScottModel;
    let mut c = ScottCorpus::default();
    let orders: Vec<Arc<Preorder>> = (0..=spec.exhaustive_max).flat_map(preorders_up_to_iso).map(Arc::new).collect();
    for a in &orders {
        let max = if a.len() <= 2 { 2 } else { 1 };
        c.endos.extend(all_ideal_rels(a, a, max));
    }
    let small: Vec<&Arc<Preorder>> = orders.iter().filter(|o| o.len() <= 2).collect();
    for a in &small {
        for b in &small {
            let fs = all_ideal_rels(a, b, 1);
            let gs = all_ideal_rels(b, a, 1);
            for f in &fs {
                for g in &gs {
                    c.pairs.push((f.clone(), g.clone()));
                }
            }
            let fa = all_ideal_rels(a, a, 1);
            let gb = all_ideal_rels(b, b, 1);
            for s in all_scott_linear(a, b) {
                for f in &fa {
                    let sf = scott_compose(&s, f)?;
                    for g in &gb {
                        if scott_compose(g, &s)? == sf {
                            c.squares.push(Square {
                                s: s.clone(),
                                f: f.clone(),
                                g: g.clone(),
                                gamma: ThinCell::witness(sf.clone(), sf.clone()),
                            });
                        }
                    }
                }
            }
        }
    }
    let tiny: Vec<&Arc<Preorder>> = orders.iter().filter(|o| o.len() <= 1).collect();
    for a in &tiny {
        for b in &tiny {
            for d in &tiny {
                for f in all_ideal_rels(a, b, 1) {
                    for g in all_ideal_rels(b, d, 1) {
                        for h in all_ideal_rels(d, a, 1) {
                            c.triples.push((f.clone(), g.clone(), h));
                        }
                    }
                }
            }
        }
    }
    if spec.random_draws > 0 && spec.random_min <= spec.random_max {
        for i in 0..spec.random_draws {
            let n = rng.gen_range(spec.random_min..=spec.random_max);
            let a = Arc::new(random_preorder(n, rng));
            c.endos.push(random_ideal_rel(&a, &a, rng));
            let b = Arc::new(random_preorder(rng.gen_range(spec.random_min..=spec.random_max), rng));
            c.pairs.push((random_ideal_rel(&a, &b, rng), random_ideal_rel(&b, &a, rng)));
            let d = Arc::new(random_preorder(rng.gen_range(spec.random_min..=spec.random_max), rng));
            c.triples.push((
                random_ideal_rel(&a, &b, rng),
                random_ideal_rel(&b, &d, rng),
                random_ideal_rel(&d, &a, rng),
            ));
            let f = random_ideal_rel(&a, &a, rng);
            let (s, g) = if i % 2 == 0 {
                (scott_promote(&a, &a, &(0..n).map(|x| (x, x)).collect()), f.clone())
            } else {
                let gens: Vec<_> =
                    random_ideal_rel(&b, &b, rng).generators().iter().filter(|(u, _)| !u.is_empty()).cloned().collect();
                (IdealRel::new(a.clone(), b.clone(), Vec::new())?, IdealRel::new(b.clone(), b.clone(), gens)?)
            };
            let sf = scott_compose(&s, &f)?;
            let gs = scott_compose(&g, &s)?;
            c.squares.push(Square { s, f, g, gamma: ThinCell::witness(sf, gs) });
        }
    }
    c.derive_from_squares(&m, DERIVED_CAP)?;
    c.with_identity_cells(&m);
    Ok(c)
}

/// The hand-built categories the Cat corpus ranges over.
pub fn cat_categories() -> Vec<Arc<FinCategory>> {
    vec![
        Arc::new(FinCategory::terminal()),
        Arc::new(FinCategory::chain(2)),
        Arc::new(FinCategory::chain(3)),
        Arc::new(samples::involution()),
        Arc::new(samples::twin_initial()),
        Arc::new(samples::vee()),
        Arc::new(samples::pointed_iso()),
    ]
}

/// Cap on each family of the Cat corpus.
const CAT_CAP: usize = 120;

/// Cat-instance corpus: functors between the sample categories whose
/// Lambek chains stabilize, with every invertible 2-cell of each required
/// shape (evenly thinned to a cap).
pub fn cat_corpus(m: &CatModel) -> Result<CatCorpus> {
    cat_corpus_capped(m, Some(CAT_CAP))
}

/// The Cat corpus with nothing thinned out. Runs to a few million instances.
pub fn cat_corpus_exhaustive(m: &CatModel) -> Result<CatCorpus> {
    cat_corpus_capped(m, None)
}

fn cat_corpus_capped(m: &CatModel, cap: Option<usize>) -> Result<CatCorpus> {
    let thin = |n: usize| cap.map_or(usize::MAX, |c| c * n);
    let cats = cat_categories();
    let mut c = CatCorpus::default();
    let ok = |f: &FunctorData| m.star(f).is_ok();
    let mut endos: Vec<Vec<FunctorData>> = Vec::new();
    for x in &cats {
        let es: Vec<FunctorData> = enumerate_functors(x, x, m.bound)?.into_iter().filter(|f| ok(f)).collect();
        c.endos.extend(es.iter().cloned());
        endos.push(es);
    }
    let mut isos = Vec::new();
    for es in &endos {
        for f in es {
            for g in es {
                isos.extend(enumerate_nat_isos(f, g, m.bound)?);
            }
        }
    }
    // keep every non-identity iso and a few identities
    let (ids, non_ids): (Vec<_>, Vec<_>) = isos.into_iter().partition(|t| t.is_identity());
    c.endo_isos = non_ids;
    c.endo_isos.extend(if cap.is_some() { spread(&ids, 20) } else { ids });
    c.endo_isos = spread(&c.endo_isos, thin(1));

    let mut pairs = Vec::new();
    for a in &cats {
        for b in &cats {
            let fs = enumerate_functors(a, b, m.bound)?;
            let gs = enumerate_functors(b, a, m.bound)?;
            for f in &fs {
                for g in &gs {
                    if ok(&g.after(f)?) && ok(&f.after(g)?) {
                        pairs.push((f.clone(), g.clone()));
                    }
                }
            }
        }
    }
    c.pairs = spread(&pairs, thin(2));

    let mut triples = Vec::new();
    for es in &endos {
        let es = if cap.is_some() { spread(es, 8) } else { es.clone() };
        for f in &es {
            for g in &es {
                for h in &es {
                    let gf = g.after(f)?;
                    if ok(&h.after(&gf)?)
                        && ok(&gf.after(h)?)
                        && ok(&f.after(h)?.after(g)?)
                        && ok(&g.after(&f.after(h)?)?)
                    {
                        triples.push((f.clone(), g.clone(), h.clone()));
                    }
                }
            }
        }
    }
    c.triples = spread(&triples, thin(1));

    for alpha in &c.endo_isos {
        for g in endos.iter().flatten().filter(|g| *g.source == *alpha.source.target) {
            let (f, f2) = (&alpha.source, &alpha.target);
            if ok(&g.after(f)?) && ok(&f.after(g)?) && ok(&g.after(f2)?) && ok(&f2.after(g)?) {
                c.left_cells.push((alpha.clone(), g.clone()));
                c.right_cells.push((g.clone(), alpha.clone()));
            }
        }
    }
    c.left_cells = spread(&c.left_cells, thin(1));
    c.right_cells = spread(&c.right_cells, thin(1));

    let mut squares = Vec::new();
    for (ia, a) in cats.iter().enumerate() {
        for (ib, b) in cats.iter().enumerate() {
            let strict: Vec<FunctorData> =
                enumerate_functors(a, b, m.bound)?.into_iter().filter(|s| s.preserves_initial()).collect();
            for s in &strict {
                for f in &endos[ia] {
                    let sf = s.after(f)?;
                    for g in &endos[ib] {
                        for gamma in enumerate_nat_isos(&sf, &g.after(s)?, m.bound)? {
                            squares.push(Square { s: s.clone(), f: f.clone(), g: g.clone(), gamma });
                        }
                    }
                }
            }
        }
    }
    c.squares = spread(&squares, thin(2));
    c.derive_from_squares(m, thin(1))?;

    for x in &c.squares {
        for y in &c.squares {
            if x.f == y.f && x.g == y.g && x.s.target == y.s.target && x.s.source == y.s.source {
                for theta in enumerate_nat_transfs(&x.s, &y.s, m.bound)? {
                    c.square_cells.push((x.clone(), y.clone(), theta));
                }
            }
            if x.s == y.s {
                for alpha in enumerate_nat_isos(&x.f, &y.f, m.bound)? {
                    for beta in enumerate_nat_isos(&x.g, &y.g, m.bound)? {
                        c.square_pairs.push(super::corpus::SquarePair {
                            gamma: x.clone(),
                            rho: y.clone(),
                            alpha: alpha.clone(),
                            beta,
                        });
                    }
                }
            }
        }
    }
    c.square_cells = filter_square_cells(m, c.square_cells)?;
    c.square_pairs = filter_square_pairs(m, c.square_pairs)?;
    c.square_cells = spread(&c.square_cells, thin(1));
    c.square_pairs = spread(&c.square_pairs, thin(1));
    Ok(c)
}

/// Keeps `(γ, ρ, θ)` with `(g · θ) ∘ γ = ρ ∘ (θ · f)`.
pub fn filter_square_cells<M: FixpointModel>(
    m: &M,
    v: Vec<SquareCell<M::Cell, M::Two>>,
) -> Result<Vec<SquareCell<M::Cell, M::Two>>> {
    let mut out = Vec::new();
    for (x, y, theta) in v {
        let lhs = m.vcomp(&m.whisker_left(&x.g, &theta)?, &x.gamma)?;
        let rhs = m.vcomp(&y.gamma, &m.whisker_right(&theta, &x.f)?)?;
        if m.two_eq(&lhs, &rhs) {
            out.push((x, y, theta));
        }
    }
    Ok(out)
}

/// Keeps pairs with `ρ ∘ (s · α) = (β · s) ∘ γ`.
pub fn filter_square_pairs<M: FixpointModel>(
    m: &M,
    v: Vec<super::corpus::SquarePair<M::Cell, M::Two>>,
) -> Result<Vec<super::corpus::SquarePair<M::Cell, M::Two>>> {
    let mut out = Vec::new();
    for p in v {
        let lhs = m.vcomp(&p.rho.gamma, &m.whisker_left(&p.gamma.s, &p.alpha)?)?;
        let rhs = m.vcomp(&m.whisker_right(&p.beta, &p.gamma.s)?, &p.gamma.gamma)?;
        if m.two_eq(&lhs, &rhs) {
            out.push(p);
        }
    }
    Ok(out)
}
