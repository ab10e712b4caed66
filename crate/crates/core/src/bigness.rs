//! The m-bigness decision procedure.
//!
//! A subgroup `G ⊆ GL(V)` over `k` of characteristic `l` is m-big when
//!
//! * B1: `G` has no nontrivial quotient of `l`-power order;
//! * B2: `V` is absolutely irreducible;
//! * B3: `H¹(G, ad⁰ V) = 0`;
//! * B4: for every irreducible submodule `W ⊆ ad V` there are `g ∈ G`,
//!   `α ∈ k` and `f ∈ W` such that `α` is a simple root of the
//!   characteristic polynomial `h_g`, `α^m ≠ β^m` for every other root `β`
//!   of `h_g` in `k̄`, and `V_{g,α} → V → V → V_{g,α}` through `f` is nonzero.
//!
//! Budget exhaustion never turns into a negative answer: it makes the
//! verdict [`Verdict::Indeterminate`].

use std::collections::HashMap;

use num_integer::Integer;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cohomology::{self, CohomologyError, DEFAULT_COCYCLE_BUDGET};
use crate::field::{Embedding, Fe, Field};
use crate::linalg::{generalized_eigenspace, spectral_projector_with, Mat, Subspace};
use crate::matgroup::{
    enumerate, has_l_power_quotient, scalar_closure, EnumeratedGroup, GroupError, GroupSpec,
};
use crate::modrep::{
    ad0_submodule, ad_module, ad_vector_to_matrix, irreducible_submodules, is_absolutely_irreducible,
    GModule, MeataxeConfig, ModrepError, DEFAULT_CHOP_BUDGET, DEFAULT_SUBMODULE_CAP,
};
use crate::par::Exec;
use crate::poly::{self, Poly};

/// Seeds and budgets for a bigness run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BignessConfig {
    pub seed: u64,
    pub meataxe_budget: usize,
    pub submodule_cap: usize,
    pub cocycle_budget: usize,
    pub exec: Exec,
}

impl Default for BignessConfig {
    fn default() -> Self {
        BignessConfig {
            seed: 0,
            meataxe_budget: DEFAULT_CHOP_BUDGET,
            submodule_cap: DEFAULT_SUBMODULE_CAP,
            cocycle_budget: DEFAULT_COCYCLE_BUDGET,
            exec: Exec::default(),
        }
    }
}

impl BignessConfig {
    fn meataxe(&self) -> MeataxeConfig {
        MeataxeConfig {
            seed: self.seed,
            budget: self.meataxe_budget,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Big,
    NotBig,
    Indeterminate,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Big => "BIG",
            Verdict::NotBig => "NOT_BIG",
            Verdict::Indeterminate => "INDETERMINATE",
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `(g, α, f)` for one irreducible `W ⊆ ad V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct B4Witness {
    /// Index into the certificate's submodule list.
    pub submodule: usize,
    /// Index into the enumerated group.
    pub element: usize,
    pub alpha: Fe,
    /// Index of the basis vector of `W` used as `f`.
    pub f: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum B4Outcome {
    Witnessed(B4Witness),
    Exhausted { submodule: usize },
}

impl B4Outcome {
    pub fn witness(&self) -> Option<&B4Witness> {
        match self {
            B4Outcome::Witnessed(w) => Some(w),
            B4Outcome::Exhausted { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct B3Result {
    pub holds: Option<bool>,
    pub h1_dim: Option<usize>,
}

/// Per-condition results with B4 witnesses.
#[derive(Clone, Debug)]
pub struct BignessCertificate {
    pub m: u64,
    pub field: Field,
    pub b1: Option<bool>,
    pub b2: Option<bool>,
    pub b3: B3Result,
    /// `None` when the submodules of `ad V` could not be listed.
    pub b4: Option<Vec<B4Outcome>>,
    pub verdict: Verdict,
    pub caps_hit: Vec<String>,
    /// Irreducible submodules of `ad V`, indexed by the witnesses.
    pub submodules: Vec<Subspace>,
}

impl BignessCertificate {
    pub fn b4_holds(&self) -> Option<bool> {
        self.b4
            .as_ref()
            .map(|b4| b4.iter().all(|o| o.witness().is_some()))
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &B4Witness> {
        self.b4.iter().flatten().filter_map(B4Outcome::witness)
    }

    /// B2, B3 and B4 all hold.
    pub fn b234(&self) -> Option<bool> {
        Some(self.b2? && self.b3.holds? && self.b4_holds()?)
    }

    pub fn to_json(&self) -> Value {
        let b4 = self.b4.as_ref().map(|list| {
            list.iter()
                .map(|o| match o {
                    B4Outcome::Witnessed(w) => json!({
                        "submodule": w.submodule,
                        "element": w.element,
                        "alpha": self.field.to_json(w.alpha),
                        "f": w.f,
                    }),
                    B4Outcome::Exhausted { submodule } => json!({
                        "submodule": submodule,
                        "element": null,
                        "alpha": null,
                        "f": null,
                    }),
                })
                .collect::<Vec<_>>()
        });
        json!({
            "m": self.m,
            "b1": self.b1,
            "b2": self.b2,
            "b3": { "holds": self.b3.holds, "h1_dim": self.b3.h1_dim },
            "b4": b4,
            "verdict": self.verdict.as_str(),
            "caps_hit": self.caps_hit,
        })
    }

    /// Submodule bases as `n x n` matrices, for witness files.
    pub fn submodules_json(&self, n: usize) -> Value {
        let f = &self.field;
        Value::from(
            self.submodules
                .iter()
                .map(|s| {
                    Value::from(
                        s.basis()
                            .iter()
                            .map(|v| {
                                let mat = ad_vector_to_matrix(f, n, v);
                                Value::from(
                                    (0..n)
                                        .map(|i| Value::from(mat.row(i).iter().map(|&x| f.to_json(x)).collect::<Vec<_>>()))
                                        .collect::<Vec<_>>(),
                                )
                            })
                            .collect::<Vec<_>>(),
                    )
                })
                .collect::<Vec<_>>(),
        )
    }
}

/// Roots `α ∈ k` of `h` that are simple and whose `m`-th power differs from
/// `β^m` for every other root `β` in the splitting field, in lexicographic order.
pub fn separating_roots(h: &Poly, m: u64) -> Vec<Fe> {
    let f = h.field();
    let mut simple: Vec<Fe> = poly::roots_in_field(h, 0)
        .into_iter()
        .filter(|&(_, mult)| mult == 1)
        .map(|(a, _)| a)
        .collect();
    simple.sort_by_key(|&a| f.lex_key(a));
    if simple.is_empty() {
        return simple;
    }
    match poly::splitting_field(h) {
        Ok(split) => {
            let ext = &split.field;
            simple
                .into_iter()
                .filter(|&a| {
                    let ae = split.embedding.apply(a);
                    let am = ext.pow_u(ae, m);
                    split
                        .roots
                        .iter()
                        .all(|&(b, _)| b == ae || ext.pow_u(b, m) != am)
                })
                .collect()
        }
        // splitting field beyond the field-size cap: same test without leaving k
        Err(_) => simple.into_iter().filter(|&a| separates_by_gcd(h, a, m)).collect(),
    }
}

/// `α^m ≠ β^m` for every root `β ≠ α` of `h`, decided over `k` as
/// `gcd(h / (x − α), x^m − α^m) = 1`.
fn separates_by_gcd(h: &Poly, alpha: Fe, m: u64) -> bool {
    let f = h.field();
    let Some(rest) = h.div_exact(&Poly::linear(f, alpha)) else {
        return false;
    };
    if rest.deg() == 0 {
        return true;
    }
    let xm = Poly::x(f).pow_mod(m, &rest);
    let target = xm.sub(&Poly::constant(f, f.pow_u(alpha, m))).rem(&rest);
    rest.gcd(&target).deg() == 0
}

/// Whether `π_α ∘ f ∘ ι` on `V_{g,α}` is nonzero.
fn composite_nonzero(projector: &Mat, eigen_basis: &Mat, f: &Mat) -> bool {
    !projector.mul(f).mul(eigen_basis).is_zero()
}

/// Scans the group for a B4 witness for each submodule.
pub fn check_b4_on(
    g: &EnumeratedGroup,
    m: u64,
    submodules: &[Subspace],
    exec: Exec,
) -> Vec<B4Outcome> {
    let field = g.field();
    let n = g.n();
    let charpolys: Vec<Poly> = exec.map(0..g.order(), |i| g.element(i).charpoly().expect("square"));
    let mut distinct: Vec<&Poly> = Vec::new();
    let mut slot: HashMap<&[Fe], usize> = HashMap::new();
    let class: Vec<usize> = charpolys
        .iter()
        .map(|h| {
            *slot.entry(h.coeffs()).or_insert_with(|| {
                distinct.push(h);
                distinct.len() - 1
            })
        })
        .collect();
    let alphas: Vec<Vec<Fe>> = exec.map(0..distinct.len(), |c| separating_roots(distinct[c], m));
    submodules
        .iter()
        .enumerate()
        .map(|(idx, w)| {
            let fs: Vec<Mat> = w.basis().iter().map(|v| ad_vector_to_matrix(field, n, v)).collect();
            let found = exec.find_first(0..g.order(), |i| {
                let cands = &alphas[class[i]];
                if cands.is_empty() {
                    return None;
                }
                let x = g.element(i);
                cands.iter().find_map(|&alpha| {
                    let pi = spectral_projector_with(&x, &charpolys[i], alpha).expect("alpha is a root");
                    let basis = generalized_eigenspace(&x, alpha).basis_matrix(field);
                    fs.iter()
                        .position(|fm| composite_nonzero(&pi, &basis, fm))
                        .map(|j| B4Witness {
                            submodule: idx,
                            element: i,
                            alpha,
                            f: j,
                        })
                })
            });
            match found {
                Some(w) => B4Outcome::Witnessed(w),
                None => B4Outcome::Exhausted { submodule: idx },
            }
        })
        .collect()
}

/// Lists the irreducible submodules of `ad V` and scans for witnesses.
pub fn check_b4(
    g: &EnumeratedGroup,
    m: u64,
    cfg: &BignessConfig,
) -> Result<(Vec<Subspace>, Vec<B4Outcome>), ModrepError> {
    let ad = ad_module(g);
    let subs = irreducible_submodules(&ad, g, cfg.meataxe(), cfg.submodule_cap)?;
    let outcomes = check_b4_on(g, m, &subs, cfg.exec);
    Ok((subs, outcomes))
}

fn b1(g: &EnumeratedGroup) -> bool {
    let l = g.field().p();
    (g.order() as u64).gcd(&l) == 1 || !has_l_power_quotient(g, l)
}

fn cap_tag(e: &ModrepError) -> String {
    match e {
        ModrepError::ChopBudgetExceeded(_) => format!("meataxe_budget: {e}"),
        ModrepError::TooManySubmodules { .. } => format!("submodule_cap: {e}"),
        other => format!("module: {other}"),
    }
}

/// Evaluates B1–B4 and assembles the certificate.
pub fn is_m_big(g: &EnumeratedGroup, m: u64, cfg: &BignessConfig) -> BignessCertificate {
    assert!(m >= 1, "m must be positive");
    let mut caps_hit = Vec::new();
    let b1 = Some(b1(g));
    let v = GModule::natural(g);
    let b2 = match is_absolutely_irreducible(&v, g, cfg.meataxe()) {
        Ok(b) => Some(b),
        Err(e) => {
            caps_hit.push(cap_tag(&e));
            None
        }
    };
    let ad = ad_module(g);
    let ad0 = ad0_submodule(&ad).expect("adjoint module");
    let b3 = match cohomology::h1_report(g, &ad0, cfg.cocycle_budget) {
        Ok(r) => B3Result {
            holds: Some(r.h1_dim() == 0),
            h1_dim: Some(r.h1_dim()),
        },
        Err(e) => {
            let tag = match &e {
                CohomologyError::SystemTooLarge { .. } => "cocycle_budget",
                _ => "cohomology",
            };
            caps_hit.push(format!("{tag}: {e}"));
            B3Result {
                holds: None,
                h1_dim: None,
            }
        }
    };
    let (submodules, b4) = match irreducible_submodules(&ad, g, cfg.meataxe(), cfg.submodule_cap) {
        Ok(subs) => {
            let outcomes = check_b4_on(g, m, &subs, cfg.exec);
            (subs, Some(outcomes))
        }
        Err(e) => {
            caps_hit.push(cap_tag(&e));
            (Vec::new(), None)
        }
    };
    let mut cert = BignessCertificate {
        m,
        field: g.field().clone(),
        b1,
        b2,
        b3,
        b4,
        verdict: Verdict::Indeterminate,
        caps_hit,
        submodules,
    };
    if cert.caps_hit.is_empty() {
        let holds = cert.b1 == Some(true) && cert.b234() == Some(true);
        cert.verdict = if holds { Verdict::Big } else { Verdict::NotBig };
    }
    cert
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("witness refers to element {0}, outside the group")]
    BadElement(usize),
    #[error("witness refers to submodule {0}, not in the certificate")]
    BadSubmodule(usize),
    #[error("witness refers to basis vector {0} of a smaller submodule")]
    BadBasisIndex(usize),
    #[error("submodule {0} is not invariant")]
    NotInvariant(usize),
    #[error("alpha is not an element of the base field")]
    AlphaOutsideField,
    #[error("alpha is not a root of h_g")]
    NotARoot,
    #[error("alpha is a repeated root of h_g")]
    NotSimple,
    #[error("alpha^m coincides with beta^m for another root beta")]
    NotSeparated,
    #[error("composite through f vanishes")]
    ZeroComposite,
}

/// Re-checks one witness from the group elements and the submodule alone.
///
/// Uses the Hessenberg characteristic polynomial, a derivative test for
/// simplicity, a gcd test for separation, and the decomposition
/// `V = ker(g − α) ⊕ im (g − α)^n` in place of the spectral projector.
pub fn replay_witness(
    g: &EnumeratedGroup,
    m: u64,
    w: &B4Witness,
    submodule: &Subspace,
) -> Result<(), ReplayError> {
    let field = g.field();
    let n = g.n();
    if w.element >= g.order() {
        return Err(ReplayError::BadElement(w.element));
    }
    if w.f >= submodule.dim() {
        return Err(ReplayError::BadBasisIndex(w.f));
    }
    if !field.contains(w.alpha) {
        return Err(ReplayError::AlphaOutsideField);
    }
    let x = g.element(w.element);
    let h = x.charpoly_hessenberg().expect("square");
    if !h.eval(w.alpha).is_zero() {
        return Err(ReplayError::NotARoot);
    }
    if h.derivative().eval(w.alpha).is_zero() {
        return Err(ReplayError::NotSimple);
    }
    if !separates_by_gcd(&h, w.alpha, m) {
        return Err(ReplayError::NotSeparated);
    }
    let shifted = x.sub(&Mat::scalar(field, n, w.alpha));
    let line = shifted.kernel();
    let mut power = Mat::identity(field, n);
    for _ in 0..n {
        power = power.mul(&shifted);
    }
    let complement = power.column_space();
    let fm = ad_vector_to_matrix(field, n, &submodule.basis()[w.f]);
    let detected = line
        .basis()
        .iter()
        .any(|v| !complement.contains(field, &fm.mul_vec(v)));
    if !detected {
        return Err(ReplayError::ZeroComposite);
    }
    Ok(())
}

/// Replays every witness in a certificate; returns how many were checked.
pub fn replay_certificate(g: &EnumeratedGroup, cert: &BignessCertificate) -> Result<usize, ReplayError> {
    replay_certificate_for(g, cert, cert.m)
}

/// Replays the witnesses of `cert` against exponent `m` instead of `cert.m`.
pub fn replay_certificate_for(g: &EnumeratedGroup, cert: &BignessCertificate, m: u64) -> Result<usize, ReplayError> {
    let ad = ad_module(g);
    let mut count = 0;
    for w in cert.witnesses() {
        let sub = cert
            .submodules
            .get(w.submodule)
            .ok_or(ReplayError::BadSubmodule(w.submodule))?;
        if !ad.is_invariant(sub) {
            return Err(ReplayError::NotInvariant(w.submodule));
        }
        replay_witness(g, m, w, sub)?;
        count += 1;
    }
    Ok(count)
}

/// The same generators over the degree-`d` extension of the base field.
pub fn base_change(g: &EnumeratedGroup, degree: u32, cap: usize) -> Result<EnumeratedGroup, GroupError> {
    let base = g.field();
    let ext = Field::new(base.p(), base.e() * degree).map_err(GroupError::from)?;
    let emb = Embedding::new(base, &ext).map_err(GroupError::from)?;
    enumerate(&g.spec().embed(&emb), cap)
}

/// Outcome of one metamorphic relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Consistent,
    Violated(String),
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct MetamorphicReport {
    /// Normal subgroup satisfying B2–B4 forces the same on `G`.
    pub normal_subgroup: Relation,
    /// `G` and `k^× G` have the same verdict.
    pub scalar_closure: Relation,
    /// A BIG verdict survives extending scalars to the quadratic extension.
    pub base_change: Relation,
    pub verdicts: Vec<(String, Verdict)>,
}

impl MetamorphicReport {
    pub fn violations(&self) -> Vec<&str> {
        [&self.normal_subgroup, &self.scalar_closure, &self.base_change]
            .into_iter()
            .filter_map(|r| match r {
                Relation::Violated(msg) => Some(msg.as_str()),
                _ => None,
            })
            .collect()
    }
}

fn is_normal_in(h: &EnumeratedGroup, g: &EnumeratedGroup) -> bool {
    g.spec().generators().iter().all(|s| {
        let si = s.inverse().expect("invertible");
        h.spec()
            .generators()
            .iter()
            .all(|x| h.contains(&si.mul(x).mul(s)))
    })
}

/// Checks the three elementary relations on one instance.
///
/// `normal_gens` selects generators of `G` spanning the candidate normal
/// subgroup `H`; the relation is skipped when `H` is not normal.
pub fn metamorphic_suite(
    g: &EnumeratedGroup,
    m: u64,
    cfg: &BignessConfig,
    normal_gens: Option<&[usize]>,
    cap: usize,
) -> MetamorphicReport {
    let cert = is_m_big(g, m, cfg);
    let mut verdicts = vec![("G".to_string(), cert.verdict)];

    let normal_subgroup = match normal_gens {
        None => Relation::Skipped("no normal subgroup supplied".into()),
        Some(idx) => match enumerate(&g.spec().restrict_generators(idx), cap) {
            Err(e) => Relation::Skipped(e.to_string()),
            Ok(h) if !is_normal_in(&h, g) => Relation::Skipped("subgroup is not normal".into()),
            Ok(h) => {
                let hc = is_m_big(&h, m, cfg);
                verdicts.push(("H".into(), hc.verdict));
                match (hc.b234(), cert.b234()) {
                    (Some(true), Some(false)) => {
                        Relation::Violated("H satisfies B2-B4 but G does not".into())
                    }
                    (Some(_), Some(_)) => Relation::Consistent,
                    _ => Relation::Skipped("budget exhausted".into()),
                }
            }
        },
    };

    let scalar_closure = match scalar_closure(g, cap) {
        Err(e) => Relation::Skipped(e.to_string()),
        Ok(kg) => {
            let v = is_m_big(&kg, m, cfg).verdict;
            verdicts.push(("k^x G".into(), v));
            compare_equal(cert.verdict, v, "G", "k^x G")
        }
    };

    let base_change = match base_change(g, 2, cap) {
        Err(e) => Relation::Skipped(e.to_string()),
        Ok(ge) => {
            let v = is_m_big(&ge, m, cfg).verdict;
            verdicts.push(("G over k'".into(), v));
            match (cert.verdict, v) {
                (Verdict::Indeterminate, _) | (_, Verdict::Indeterminate) => {
                    Relation::Skipped("budget exhausted".into())
                }
                (Verdict::Big, Verdict::NotBig) => {
                    Relation::Violated("BIG over k but NOT_BIG over the quadratic extension".into())
                }
                _ => Relation::Consistent,
            }
        }
    };

    MetamorphicReport {
        normal_subgroup,
        scalar_closure,
        base_change,
        verdicts,
    }
}

fn compare_equal(a: Verdict, b: Verdict, na: &str, nb: &str) -> Relation {
    match (a, b) {
        (Verdict::Indeterminate, _) | (_, Verdict::Indeterminate) => {
            Relation::Skipped("budget exhausted".into())
        }
        (a, b) if a == b => Relation::Consistent,
        (a, b) => Relation::Violated(format!("{na} is {a} but {nb} is {b}")),
    }
}

/// `SL₂(F_q)` in its standard representation.
pub fn sl2_group(field: &Field, cap: usize) -> Result<EnumeratedGroup, GroupError> {
    enumerate(&GroupSpec::sl2(field), cap)
}
