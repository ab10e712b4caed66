//! G-modules over GF(q) and their decomposition.
//!
//! Irreducibility is decided with a randomized Meataxe: random elements of the
//! group algebra are factored, kernel vectors of irreducible-factor
//! evaluations are spun up, and Norton's criterion certifies irreducibility
//! when the kernel dimension matches the factor degree.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{Embedding, Fe, Field};
use crate::linalg::{Echelon, Mat, Subspace};
use crate::matgroup::EnumeratedGroup;
use crate::poly;

pub const DEFAULT_CHOP_BUDGET: usize = 200;
pub const DEFAULT_SUBMODULE_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModrepError {
    #[error("Meataxe gave up after {0} random algebra elements")]
    ChopBudgetExceeded(usize),
    #[error("{count} candidate irreducible submodules exceed the cap {cap}")]
    TooManySubmodules { count: u128, cap: usize },
    #[error("module has {module} generator matrices, group has {group} generators")]
    GeneratorMismatch { module: usize, group: usize },
    #[error("module of dimension {0} is not an adjoint module")]
    NotAdjoint(usize),
}

/// Randomness and effort limits for the Meataxe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeataxeConfig {
    pub seed: u64,
    pub budget: usize,
}

impl Default for MeataxeConfig {
    fn default() -> Self {
        MeataxeConfig {
            seed: 0,
            budget: DEFAULT_CHOP_BUDGET,
        }
    }
}

impl MeataxeConfig {
    pub fn with_seed(seed: u64) -> Self {
        MeataxeConfig {
            seed,
            ..Default::default()
        }
    }
}

/// A finite-dimensional module given by one matrix per group generator.
#[derive(Clone, Debug)]
pub struct GModule {
    field: Field,
    dim: usize,
    action: Vec<Mat>,
    label: String,
}

impl GModule {
    pub fn new(field: &Field, dim: usize, action: Vec<Mat>, label: impl Into<String>) -> GModule {
        for a in &action {
            assert!(a.rows() == dim && a.cols() == dim, "action matrix shape");
        }
        GModule {
            field: field.clone(),
            dim,
            action,
            label: label.into(),
        }
    }

    /// The defining module `V` of a matrix group.
    pub fn natural(g: &EnumeratedGroup) -> GModule {
        GModule::new(g.field(), g.n(), g.spec().generators().to_vec(), "V")
    }

    /// `dim` copies of the trivial module.
    pub fn trivial(g: &EnumeratedGroup, dim: usize) -> GModule {
        let id = Mat::identity(g.field(), dim);
        GModule::new(g.field(), dim, vec![id; g.num_generators()], "trivial")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Mat] {
        &self.action
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn check_compatible(&self, g: &EnumeratedGroup) -> Result<(), ModrepError> {
        if self.action.len() != g.num_generators() {
            return Err(ModrepError::GeneratorMismatch {
                module: self.action.len(),
                group: g.num_generators(),
            });
        }
        Ok(())
    }

    /// Action matrix of group element `i`.
    pub fn element_action(&self, g: &EnumeratedGroup, i: usize) -> Mat {
        g.evaluate(i, &self.action, &Mat::identity(&self.field, self.dim))
    }

    /// Whether the generator matrices define a representation of the whole
    /// enumerated group (every Cayley edge is respected).
    pub fn extends_to(&self, g: &EnumeratedGroup) -> bool {
        if self.check_compatible(g).is_err() {
            return false;
        }
        let mut images: Vec<Option<Mat>> = vec![None; g.order()];
        images[0] = Some(Mat::identity(&self.field, self.dim));
        for i in 0..g.order() {
            let x = images[i].clone().expect("BFS order reaches parents first");
            for (s, a) in self.action.iter().enumerate() {
                let j = g.right_mul(i, s);
                let y = x.mul(a);
                match &images[j] {
                    Some(existing) if *existing != y => return false,
                    Some(_) => {}
                    None => images[j] = Some(y),
                }
            }
        }
        true
    }

    /// Smallest submodule containing the given vectors.
    pub fn spin(&self, seeds: &[Vec<Fe>]) -> Subspace {
        spin_with(&self.field, self.dim, &self.action, seeds)
    }

    /// Smallest subspace containing the seeds and stable under the transposed action.
    pub fn spin_transposed(&self, seeds: &[Vec<Fe>]) -> Subspace {
        let t: Vec<Mat> = self.action.iter().map(Mat::transpose).collect();
        spin_with(&self.field, self.dim, &t, seeds)
    }

    pub fn is_invariant(&self, sub: &Subspace) -> bool {
        self.action
            .iter()
            .all(|a| sub.basis().iter().all(|b| sub.contains(&self.field, &a.mul_vec(b))))
    }

    /// Action on an invariant subspace, in its echelon basis.
    pub fn restrict(&self, sub: &Subspace, label: impl Into<String>) -> GModule {
        let f = &self.field;
        let d = sub.dim();
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Fe>> = sub
                    .basis()
                    .iter()
                    .map(|b| sub.coords(f, &a.mul_vec(b)).expect("subspace is invariant"))
                    .collect();
                Mat::from_columns(f, d, &cols)
            })
            .collect();
        GModule::new(f, d, action, label)
    }

    /// Action on `V / sub`, in the basis of non-pivot unit vectors.
    pub fn quotient(&self, sub: &Subspace, label: impl Into<String>) -> GModule {
        let f = &self.field;
        let mut is_pivot = vec![false; self.dim];
        for &p in sub.pivots() {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.dim).filter(|&c| !is_pivot[c]).collect();
        let d = free.len();
        let action = self
            .action
            .iter()
            .map(|a| {
                let cols: Vec<Vec<Fe>> = free
                    .iter()
                    .map(|&j| {
                        let w = sub.reduce(f, &a.col(j));
                        free.iter().map(|&i| w[i]).collect()
                    })
                    .collect();
                Mat::from_columns(f, d, &cols)
            })
            .collect();
        GModule::new(f, d, action, label)
    }

    /// Same module after extending scalars.
    pub fn embed(&self, emb: &Embedding) -> GModule {
        GModule::new(
            emb.dst(),
            self.dim,
            self.action.iter().map(|a| a.embed(emb)).collect(),
            self.label.clone(),
        )
    }
}

fn spin_with(field: &Field, dim: usize, action: &[Mat], seeds: &[Vec<Fe>]) -> Subspace {
    let mut ech = Echelon::new(field, dim);
    let mut queue: Vec<Vec<Fe>> = Vec::new();
    for v in seeds {
        if ech.insert(v.clone()) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if ech.rank() == dim {
            break;
        }
        for a in action {
            let w = a.mul_vec(&v);
            if ech.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    ech.into_subspace()
}

/// `Hom_G(a, b)`: basis of matrices `φ` (`b.dim x a.dim`) with `φ a(s) = b(s) φ`.
pub fn hom_space(a: &GModule, b: &GModule) -> Vec<Mat> {
    let f = &a.field;
    let (da, db) = (a.dim, b.dim);
    let unknowns = da * db;
    let mut eqs: Vec<Fe> = Vec::new();
    let mut nrows = 0;
    for (ra, rb) in a.action.iter().zip(&b.action) {
        for i in 0..db {
            for j in 0..da {
                let mut row = vec![Fe::ZERO; unknowns];
                for k in 0..db {
                    let c = rb.get(i, k);
                    row[k * da + j] = f.add(row[k * da + j], c);
                }
                for k in 0..da {
                    let c = ra.get(k, j);
                    row[i * da + k] = f.sub(row[i * da + k], c);
                }
                eqs.extend(row);
                nrows += 1;
            }
        }
    }
    let system = Mat::new(f, nrows, unknowns, eqs).expect("shape");
    system
        .kernel()
        .basis()
        .iter()
        .map(|v| Mat::new(f, db, da, v.clone()).expect("shape"))
        .collect()
}

/// `dim End_G(m)`.
pub fn endomorphism_dim(m: &GModule) -> usize {
    hom_space(m, m).len()
}

fn random_algebra_element(m: &GModule, g: &EnumeratedGroup, rng: &mut ChaCha8Rng) -> Mat {
    let f = &m.field;
    let terms = rng.gen_range(1..=4);
    let mut theta = Mat::zeros(f, m.dim, m.dim);
    for _ in 0..terms {
        let idx = rng.gen_range(0..g.order());
        let c = Fe(rng.gen_range(1..f.q()) as u32);
        theta = theta.add(&m.element_action(g, idx).scale(c));
    }
    theta
}

/// One round of the Meataxe: a proper nonzero submodule, or `None` once
/// irreducibility is certified.
fn chop(m: &GModule, g: &EnumeratedGroup, rng: &mut ChaCha8Rng, budget: usize) -> Result<Option<Subspace>, ModrepError> {
    m.check_compatible(g)?;
    let dim = m.dim;
    if dim <= 1 {
        return Ok(None);
    }
    let f = &m.field;
    for _ in 0..budget {
        let theta = random_algebra_element(m, g, rng);
        let h = theta.charpoly().expect("square");
        let factors = poly::factor(&h, rng.gen()).expect("charpoly is monic");
        for (fac, _) in &factors {
            let n = theta.eval_poly(fac);
            let ker = n.kernel();
            let v = ker.basis()[0].clone();
            let sub = m.spin(&[v]);
            if sub.dim() < dim {
                return Ok(Some(sub));
            }
            if ker.dim() == fac.deg() {
                let w = n.transpose().kernel().basis()[0].clone();
                let dual = m.spin_transposed(&[w]);
                if dual.dim() < dim {
                    let rows = dual.basis().concat();
                    let ann = Mat::new(f, dual.dim(), dim, rows).expect("shape").kernel();
                    debug_assert!(m.is_invariant(&ann));
                    return Ok(Some(ann));
                }
                return Ok(None);
            }
        }
    }
    Err(ModrepError::ChopBudgetExceeded(budget))
}

/// Irreducibility over the module's own field.
pub fn is_irreducible(m: &GModule, g: &EnumeratedGroup, cfg: MeataxeConfig) -> Result<bool, ModrepError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    Ok(chop(m, g, &mut rng, cfg.budget)?.is_none())
}

/// Irreducible with scalar endomorphisms only.
pub fn is_absolutely_irreducible(m: &GModule, g: &EnumeratedGroup, cfg: MeataxeConfig) -> Result<bool, ModrepError> {
    m.check_compatible(g)?;
    if endomorphism_dim(m) != 1 {
        return Ok(false);
    }
    is_irreducible(m, g, cfg)
}

fn constituents_rec(
    m: &GModule,
    g: &EnumeratedGroup,
    rng: &mut ChaCha8Rng,
    budget: usize,
    out: &mut Vec<GModule>,
) -> Result<(), ModrepError> {
    match chop(m, g, rng, budget)? {
        None => out.push(m.clone()),
        Some(sub) => {
            let s = m.restrict(&sub, format!("{}.s", m.label));
            let q = m.quotient(&sub, format!("{}.q", m.label));
            constituents_rec(&s, g, rng, budget, out)?;
            constituents_rec(&q, g, rng, budget, out)?;
        }
    }
    Ok(())
}

/// Composition factors with multiplicity (submodule side first).
pub fn simple_constituents(m: &GModule, g: &EnumeratedGroup, cfg: MeataxeConfig) -> Result<Vec<GModule>, ModrepError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::new();
    if m.dim == 0 {
        return Ok(out);
    }
    constituents_rec(m, g, &mut rng, cfg.budget, &mut out)?;
    Ok(out)
}

/// One representative per isomorphism class, in order of first appearance.
pub fn isomorphism_classes(constituents: &[GModule]) -> Vec<GModule> {
    let mut classes: Vec<GModule> = Vec::new();
    for c in constituents {
        let known = classes
            .iter()
            .any(|r| r.dim == c.dim && !hom_space(r, c).is_empty());
        if !known {
            classes.push(c.clone());
        }
    }
    classes
}

/// Every irreducible submodule of `m`.
///
/// For each isomorphism class `S` of composition factor, the submodules
/// isomorphic to `S` are the images of the nonzero elements of
/// `Hom_G(S, m)`; one representative per line is enumerated and images are
/// deduplicated by their canonical basis.
pub fn irreducible_submodules(
    m: &GModule,
    g: &EnumeratedGroup,
    cfg: MeataxeConfig,
    cap: usize,
) -> Result<Vec<Subspace>, ModrepError> {
    let f = &m.field;
    let q = f.q() as u128;
    let constituents = simple_constituents(m, g, cfg)?;
    let classes = isomorphism_classes(&constituents);
    let homs: Vec<Vec<Mat>> = classes.iter().map(|s| hom_space(s, m)).collect();
    let mut total: u128 = 0;
    for hom in &homs {
        let h = hom.len() as u32;
        if h > 0 {
            total = total.saturating_add((q.saturating_pow(h) - 1) / (q - 1));
        }
    }
    if total > cap as u128 {
        return Err(ModrepError::TooManySubmodules { count: total, cap });
    }
    let mut seen: HashSet<Subspace> = HashSet::new();
    let mut out = Vec::new();
    for hom in &homs {
        let h = hom.len();
        for lead in 0..h {
            let tail = h - lead - 1;
            let combos = (q as u64).pow(tail as u32);
            for code in 0..combos {
                let mut phi = hom[lead].clone();
                let mut c = code;
                for t in 0..tail {
                    let coef = Fe((c % q as u64) as u32);
                    c /= q as u64;
                    if !coef.is_zero() {
                        phi = phi.add(&hom[lead + 1 + t].scale(coef));
                    }
                }
                let image = phi.column_space();
                if seen.insert(image.clone()) {
                    out.push(image);
                }
            }
        }
    }
    Ok(out)
}

/// `ad V`: `X ↦ s X s⁻¹` on the basis `E_11, E_12, ..., E_nn`.
pub fn ad_module(g: &EnumeratedGroup) -> GModule {
    let action = g
        .spec()
        .generators()
        .iter()
        .map(|s| s.kron(&s.inverse().expect("invertible").transpose()))
        .collect();
    GModule::new(g.field(), g.n() * g.n(), action, "ad V")
}

/// Trace-zero matrices inside `ad V`, as a subspace of `k^{n²}`.
pub fn trace_zero_subspace(field: &Field, n: usize) -> Subspace {
    let mut trace = vec![Fe::ZERO; n * n];
    for i in 0..n {
        trace[i * n + i] = Fe::ONE;
    }
    Mat::new(field, 1, n * n, trace).expect("shape").kernel()
}

/// `ad⁰ V`: the trace-zero submodule of an adjoint module. When the
/// characteristic divides `n` it contains the scalars; no quotient is taken.
pub fn ad0_submodule(m: &GModule) -> Result<GModule, ModrepError> {
    let n = (m.dim as f64).sqrt().round() as usize;
    if n * n != m.dim {
        return Err(ModrepError::NotAdjoint(m.dim));
    }
    let sub = trace_zero_subspace(&m.field, n);
    if !m.is_invariant(&sub) {
        return Err(ModrepError::NotAdjoint(m.dim));
    }
    Ok(m.restrict(&sub, "ad0 V"))
}

/// Reshapes a vector of `ad V` (row-major `E_ij` coordinates) into a matrix.
pub fn ad_vector_to_matrix(field: &Field, n: usize, v: &[Fe]) -> Mat {
    Mat::new(field, n, n, v.to_vec()).expect("n² coordinates")
}
