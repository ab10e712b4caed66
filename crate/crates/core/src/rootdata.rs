//! Split root data, the weight norm, and highly regular torus elements.
//!
//! Character and cocharacter lattices are `Z^r`; `⟨λ, α∨⟩ = λᵀ P α∨` for
//! the datum's pairing matrix `P`. Points of the split torus `T(k) ≅ (k^×)^r`
//! are handled through discrete logarithms `e ∈ (Z/(q−1))^r` against the
//! field's least primitive element, so `λ(t) = ω^{⟨λ, e⟩}` with the plain
//! dot product `⟨λ, e⟩ = Σ λ_i e_i`.

use std::collections::HashSet;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::field::{Fe, Field};
use crate::par::Exec;

pub const DEFAULT_SEARCH_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDataError {
    #[error("unsupported root datum type {0:?} (expected A1, A2, B2 or products like A1xA1)")]
    UnknownType(String),
    #[error("coroots do not span the cocharacter lattice; bounded weight sets are infinite")]
    NotFinite,
    #[error("torus has {size} points, above the search cap {cap}")]
    SearchSpaceTooLarge { size: u64, cap: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    label: String,
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    pairing: Vec<Vec<i64>>,
}

pub type Weight = Vec<i64>;

fn with_negatives(pos: &[Vec<i64>]) -> Vec<Vec<i64>> {
    pos.iter()
        .cloned()
        .chain(pos.iter().map(|v| v.iter().map(|x| -x).collect()))
        .collect()
}

impl RootDatum {
    /// `SL₂`: `X* = Zχ`, `α = 2χ`, `⟨χ, α∨⟩ = 1`.
    pub fn a1() -> RootDatum {
        RootDatum {
            label: "A1".into(),
            rank: 1,
            roots: with_negatives(&[vec![2]]),
            coroots: with_negatives(&[vec![1]]),
            pairing: vec![vec![1]],
        }
    }

    /// `SL₃` on fundamental weights and simple coroots.
    pub fn a2() -> RootDatum {
        RootDatum {
            label: "A2".into(),
            rank: 2,
            roots: with_negatives(&[vec![2, -1], vec![-1, 2], vec![1, 1]]),
            coroots: with_negatives(&[vec![1, 0], vec![0, 1], vec![1, 1]]),
            pairing: vec![vec![1, 0], vec![0, 1]],
        }
    }

    /// `Spin₅` with `α₁` long and `α₂` short, on fundamental weights and
    /// simple coroots.
    pub fn b2() -> RootDatum {
        RootDatum {
            label: "B2".into(),
            rank: 2,
            roots: with_negatives(&[vec![2, -2], vec![-1, 2], vec![1, 0], vec![0, 2]]),
            coroots: with_negatives(&[vec![1, 0], vec![0, 1], vec![2, 1], vec![1, 1]]),
            pairing: vec![vec![1, 0], vec![0, 1]],
        }
    }

    /// Builds a datum from raw data; the pairing must be `rank x rank`.
    pub fn new(
        label: impl Into<String>,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        pairing: Vec<Vec<i64>>,
    ) -> RootDatum {
        let rank = pairing.len();
        assert!(pairing.iter().all(|r| r.len() == rank));
        assert!(roots.iter().chain(&coroots).all(|v| v.len() == rank));
        RootDatum {
            label: label.into(),
            rank,
            roots,
            coroots,
            pairing,
        }
    }

    /// Direct product: coordinates concatenate, the pairing is block diagonal.
    pub fn product(&self, other: &RootDatum) -> RootDatum {
        let r = self.rank + other.rank;
        let pad = |v: &[i64], left: bool| -> Vec<i64> {
            let mut out = vec![0; r];
            let off = if left { 0 } else { self.rank };
            out[off..off + v.len()].copy_from_slice(v);
            out
        };
        let mut pairing = vec![vec![0; r]; r];
        for i in 0..self.rank {
            pairing[i][..self.rank].copy_from_slice(&self.pairing[i]);
        }
        for i in 0..other.rank {
            pairing[self.rank + i][self.rank..].copy_from_slice(&other.pairing[i]);
        }
        RootDatum {
            label: format!("{}x{}", self.label, other.label),
            rank: r,
            roots: self
                .roots
                .iter()
                .map(|v| pad(v, true))
                .chain(other.roots.iter().map(|v| pad(v, false)))
                .collect(),
            coroots: self
                .coroots
                .iter()
                .map(|v| pad(v, true))
                .chain(other.coroots.iter().map(|v| pad(v, false)))
                .collect(),
            pairing,
        }
    }

    /// Parses `A1`, `A2`, `B2` and `x`-separated products such as `A1xA1`.
    pub fn parse(s: &str) -> Result<RootDatum, RootDataError> {
        let mut out: Option<RootDatum> = None;
        for part in s.split(['x', 'X', '×']) {
            let d = match part.trim() {
                "A1" => RootDatum::a1(),
                "A2" => RootDatum::a2(),
                "B2" => RootDatum::b2(),
                _ => return Err(RootDataError::UnknownType(s.to_string())),
            };
            out = Some(match out {
                None => d,
                Some(prev) => prev.product(&d),
            });
        }
        out.ok_or_else(|| RootDataError::UnknownType(s.to_string()))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn pairing(&self) -> &[Vec<i64>] {
        &self.pairing
    }

    /// `⟨λ, α∨⟩ = λᵀ P α∨`.
    pub fn pair(&self, lam: &[i64], coroot: &[i64]) -> i64 {
        (0..self.rank)
            .map(|i| {
                lam[i] * (0..self.rank).map(|j| self.pairing[i][j] * coroot[j]).sum::<i64>()
            })
            .sum()
    }

    /// Rows `P α∨` for every coroot: `⟨λ, α∨⟩` is their dot product with `λ`.
    fn pairing_rows(&self) -> Vec<Vec<i64>> {
        self.coroots
            .iter()
            .map(|c| {
                (0..self.rank)
                    .map(|i| (0..self.rank).map(|j| self.pairing[i][j] * c[j]).sum())
                    .collect()
            })
            .collect()
    }
}

/// `‖λ‖`: the largest `|⟨λ, α∨⟩|` over the coroots.
pub fn weight_norm(d: &RootDatum, lam: &[i64]) -> u64 {
    d.coroots
        .iter()
        .map(|c| d.pair(lam, c).unsigned_abs())
        .max()
        .unwrap_or(0)
}

fn det_bareiss(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * if n == 0 { 1 } else { a[n - 1][n - 1] }
}

fn minor(a: &[Vec<i128>], row: usize, col: usize) -> Vec<Vec<i128>> {
    a.iter()
        .enumerate()
        .filter(|&(i, _)| i != row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|&(j, _)| j != col)
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

/// Per-coordinate bounds `|λ_j| ≤ B_j` implied by `‖λ‖ ≤ bound`.
///
/// Picks `r` linearly independent pairing rows `C`; then `λ = C⁻¹ v` with
/// `|v_i| ≤ bound`, and `|λ_j| ≤ bound · Σ_i |adj(C)_{ji}| / |det C|`.
fn coordinate_box(d: &RootDatum, bound: u64) -> Result<Vec<i64>, RootDataError> {
    let r = d.rank;
    let rows: Vec<Vec<i128>> = d
        .pairing_rows()
        .into_iter()
        .map(|v| v.into_iter().map(i128::from).collect())
        .collect();
    let mut chosen: Vec<Vec<i128>> = Vec::new();
    for row in &rows {
        if chosen.len() == r {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(row.clone());
        if rank_i128(&trial) == trial.len() {
            chosen = trial;
        }
    }
    if chosen.len() < r {
        return Err(RootDataError::NotFinite);
    }
    let det = det_bareiss(chosen.clone()).abs();
    let b = i128::from(bound);
    Ok((0..r)
        .map(|j| {
            // adj(C)_{ji} = (-1)^{i+j} det(minor(C, i, j))
            let s: i128 = (0..r)
                .map(|i| if r == 1 { 1 } else { det_bareiss(minor(&chosen, i, j)).abs() })
                .sum();
            ((b * s) / det) as i64
        })
        .collect())
}

fn rank_i128(rows: &[Vec<i128>]) -> usize {
    let mut a = rows.to_vec();
    let (n, m) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    for c in 0..m {
        let Some(p) = (rank..n).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..n {
            let (x, y) = (a[i][c], a[rank][c]);
            for j in 0..m {
                a[i][j] = a[i][j] * y - a[rank][j] * x;
            }
            let g = a[i].iter().fold(0i128, |acc, &v| acc.gcd(&v));
            if g > 1 {
                a[i].iter_mut().for_each(|v| *v /= g);
            }
        }
        rank += 1;
    }
    rank
}

/// All weights with `‖λ‖ < n`, in lexicographic order of coordinates.
pub fn weights_below(d: &RootDatum, n: u64) -> Result<Vec<Weight>, RootDataError> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let bounds = coordinate_box(d, n - 1)?;
    let mut out = Vec::new();
    let mut cur: Vec<i64> = bounds.iter().map(|b| -b).collect();
    if d.rank == 0 {
        return Ok(vec![Vec::new()]);
    }
    loop {
        if weight_norm(d, &cur) < n {
            out.push(cur.clone());
        }
        let mut i = d.rank;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < bounds[i] {
                cur[i] += 1;
                for (c, b) in cur.iter_mut().zip(&bounds).skip(i + 1) {
                    *c = -b;
                }
                break;
            }
        }
    }
}

/// A point of the split torus `(k^×)^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusElement {
    field: Field,
    coords: Vec<Fe>,
}

impl TorusElement {
    pub fn new(field: &Field, coords: Vec<Fe>) -> TorusElement {
        assert!(coords.iter().all(|c| !c.is_zero()), "torus coordinates are units");
        TorusElement {
            field: field.clone(),
            coords,
        }
    }

    /// The point `(ω^{e_1}, ..., ω^{e_r})`.
    pub fn from_logs(field: &Field, logs: &[u64]) -> TorusElement {
        let w = field.primitive();
        TorusElement::new(field, logs.iter().map(|&e| field.pow_u(w, e)).collect())
    }

    pub fn coords(&self) -> &[Fe] {
        &self.coords
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == Fe::ONE)
    }

    /// `λ(t) = Π t_i^{λ_i}`.
    pub fn eval(&self, lam: &[i64]) -> Fe {
        let f = &self.field;
        self.coords.iter().zip(lam).fold(Fe::ONE, |acc, (&t, &e)| {
            f.mul(acc, f.pow(t, e).expect("units"))
        })
    }
}

/// Number of torus points, `(q−1)^r`.
pub fn torus_order(d: &RootDatum, field: &Field) -> Option<u64> {
    (field.q() - 1).checked_pow(d.rank as u32)
}

fn checked_torus_order(d: &RootDatum, field: &Field, cap: u64) -> Result<u64, RootDataError> {
    match torus_order(d, field) {
        Some(size) if size <= cap => Ok(size),
        size => Err(RootDataError::SearchSpaceTooLarge {
            size: size.unwrap_or(u64::MAX),
            cap,
        }),
    }
}

/// Discrete logs of torus point `index`, most significant coordinate first.
pub fn index_to_logs(index: u64, rank: usize, q: u64) -> Vec<u64> {
    let mut logs = vec![0; rank];
    let mut x = index;
    for slot in logs.iter_mut().rev() {
        *slot = x % (q - 1);
        x /= q - 1;
    }
    logs
}

fn log_eval(lam: &[i64], logs: &[u64], modulus: i64) -> i64 {
    lam.iter()
        .zip(logs)
        .map(|(&l, &e)| l * e as i64)
        .sum::<i64>()
        .rem_euclid(modulus)
}

/// Options for the torus scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub cap: u64,
    pub exec: Exec,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            cap: DEFAULT_SEARCH_CAP,
            exec: Exec::default(),
        }
    }
}

/// First torus point `g` (in discrete-log order) such that `λ ↦ λ(g)^m` is
/// injective on the weights of norm `< n`.
pub fn find_m_regular(
    d: &RootDatum,
    field: &Field,
    m: u64,
    n: u64,
    cfg: SearchConfig,
) -> Result<Option<TorusElement>, RootDataError> {
    let size = checked_torus_order(d, field, cfg.cap)?;
    let weights = weights_below(d, n)?;
    let q = field.q();
    let modulus = (q - 1) as i64;
    let mm = (m % (q - 1)) as i64;
    let hit = cfg.exec.find_first(0..size as usize, |idx| {
        let logs = index_to_logs(idx as u64, d.rank, q);
        let mut seen = HashSet::with_capacity(weights.len());
        weights
            .iter()
            .all(|lam| seen.insert((mm * log_eval(lam, &logs, modulus)).rem_euclid(modulus)))
            .then_some(logs)
    });
    Ok(hit.map(|logs| TorusElement::from_logs(field, &logs)))
}

/// Pairwise check of `λ(g)^m ≠ λ'(g)^m` by field arithmetic.
pub fn is_m_regular(d: &RootDatum, g: &TorusElement, m: u64, n: u64) -> Result<bool, RootDataError> {
    let f = g.field();
    let weights = weights_below(d, n)?;
    let values: Vec<Fe> = weights.iter().map(|lam| f.pow_u(g.eval(lam), m)).collect();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] == values[j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `|ker λ ∩ T(k)| = (q−1)^{r−1} · gcd(λ_1, ..., λ_r, q−1)`.
pub fn kernel_count(d: &RootDatum, field: &Field, lam: &[i64]) -> u64 {
    let q1 = field.q() - 1;
    if d.rank == 0 {
        return 1;
    }
    let g = lam.iter().fold(q1, |acc, &l| acc.gcd(&l.unsigned_abs()));
    q1.pow(d.rank as u32 - 1) * g
}

/// `R_{m,q}`: the number of `m`-th roots of unity in `k^×`.
pub fn r_mq(m: u64, q: u64) -> u64 {
    m.gcd(&(q - 1))
}

/// Exact counts behind the existence argument for highly regular elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    #[serde(rename = "type")]
    pub datum: String,
    pub q: u64,
    pub m: u64,
    pub n: u64,
    pub r: usize,
    /// `|T(k)| = (q−1)^r`.
    pub torus_order: u64,
    /// `|S|` with `S = {λ ≠ 0 : ‖λ‖ < 2n}`.
    #[serde(rename = "S_size")]
    pub s_size: usize,
    #[serde(rename = "N")]
    pub n_count: usize,
    #[serde(rename = "R")]
    pub r_mq: u64,
    /// Largest `|ker λ ∩ T(k)|` over `λ ∈ S`.
    #[serde(rename = "M")]
    pub m_max: u64,
    /// `(q−1)^r > N · R · M`.
    pub bound_holds: bool,
    /// `|⋃_{λ∈S} ker λ^m ∩ T(k)|`.
    pub union_size: u64,
    /// `|T(k)| > union_size`.
    pub exact_uncovered: bool,
    /// `|D|` with `D = {λ − λ' ≠ 0 : ‖λ‖, ‖λ'‖ < n}`.
    pub difference_size: usize,
    /// `|⋃_{λ∈D} ker λ^m ∩ T(k)|`; its complement is exactly the set of
    /// highly m-regular points.
    pub difference_union_size: u64,
    pub difference_uncovered: bool,
}

fn union_of_kernels(
    d: &RootDatum,
    field: &Field,
    m: u64,
    weights: &[Weight],
    size: u64,
    exec: Exec,
) -> u64 {
    let q = field.q();
    let modulus = (q - 1) as i64;
    let mm = (m % (q - 1)) as i64;
    exec.count(0..size as usize, |idx| {
        let logs = index_to_logs(idx as u64, d.rank, q);
        weights
            .iter()
            .any(|lam| (mm * log_eval(lam, &logs, modulus)).rem_euclid(modulus) == 0)
    }) as u64
}

/// Nonzero differences of weights of norm `< n`, deduplicated and sorted.
pub fn difference_set(d: &RootDatum, n: u64) -> Result<Vec<Weight>, RootDataError> {
    let w = weights_below(d, n)?;
    let mut diffs: Vec<Weight> = w
        .iter()
        .flat_map(|a| w.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x - y).collect::<Vec<_>>()))
        .filter(|v: &Vec<i64>| v.iter().any(|&x| x != 0))
        .collect();
    diffs.sort();
    diffs.dedup();
    Ok(diffs)
}

/// Exact audit of the counting argument for one `(datum, q, m, n)`.
pub fn audit_bounds(
    d: &RootDatum,
    field: &Field,
    m: u64,
    n: u64,
    cfg: SearchConfig,
) -> Result<AuditReport, RootDataError> {
    let size = checked_torus_order(d, field, cfg.cap)?;
    let s: Vec<Weight> = weights_below(d, 2 * n)?
        .into_iter()
        .filter(|l| l.iter().any(|&x| x != 0))
        .collect();
    let r = r_mq(m, field.q());
    let m_max = s.iter().map(|l| kernel_count(d, field, l)).max().unwrap_or(0);
    let bound = (s.len() as u128) * u128::from(r) * u128::from(m_max);
    let union_size = union_of_kernels(d, field, m, &s, size, cfg.exec);
    let diffs = difference_set(d, n)?;
    let diff_union = union_of_kernels(d, field, m, &diffs, size, cfg.exec);
    Ok(AuditReport {
        datum: d.label.clone(),
        q: field.q(),
        m,
        n,
        r: d.rank,
        torus_order: size,
        s_size: s.len(),
        n_count: s.len(),
        r_mq: r,
        m_max,
        bound_holds: u128::from(size) > bound,
        union_size,
        exact_uncovered: size > union_size,
        difference_size: diffs.len(),
        difference_union_size: diff_union,
        difference_uncovered: size > diff_union,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(q: u64) -> Field {
        let (p, e) = crate::field::split_prime_power(q).unwrap();
        Field::new(p, e).unwrap()
    }

    fn a1a1() -> RootDatum {
        RootDatum::parse("A1xA1").unwrap()
    }

    #[test]
    fn datum_invariants() {
        for d in ["A1", "A2", "B2", "A1xA1", "A1xA2"] {
            let d = RootDatum::parse(d).unwrap();
            assert_eq!(d.roots().len(), d.coroots().len());
            for (a, c) in d.roots().iter().zip(d.coroots()) {
                assert_eq!(d.pair(a, c), 2);
                let neg: Vec<i64> = a.iter().map(|x| -x).collect();
                assert!(d.roots().contains(&neg));
            }
        }
        assert!(matches!(RootDatum::parse("G2"), Err(RootDataError::UnknownType(_))));
        assert_eq!(a1a1().rank(), 2);
    }

    #[test]
    fn norm_examples() {
        let a1 = RootDatum::a1();
        for j in -5..=5 {
            assert_eq!(weight_norm(&a1, &[j]), j.unsigned_abs());
        }
        assert_eq!(weight_norm(&RootDatum::b2(), &[0, 0]), 0);
        assert_eq!(weight_norm(&a1a1(), &[2, 3]), 3);
        // adjoint weight of A2 has norm 2
        assert_eq!(weight_norm(&RootDatum::a2(), &[1, 1]), 2);
    }

    #[test]
    fn weights_below_examples() {
        let a1 = RootDatum::a1();
        assert_eq!(weights_below(&a1, 3).unwrap(), vec![vec![-2], vec![-1], vec![0], vec![1], vec![2]]);
        assert_eq!(weights_below(&a1, 1).unwrap(), vec![vec![0]]);
        assert_eq!(weights_below(&a1a1(), 2).unwrap().len(), 9);
        // A2, norm < 2: zero and the six weights of the two 3-dim representations' orbits
        assert_eq!(weights_below(&RootDatum::a2(), 2).unwrap().len(), 7);
        let degenerate = RootDatum::new("bad", vec![vec![2, 0]], vec![vec![1, 0]], vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(weights_below(&degenerate, 2), Err(RootDataError::NotFinite));
    }

    #[test]
    fn search_examples() {
        let a1 = RootDatum::a1();
        let cfg = SearchConfig::default();
        let t = find_m_regular(&a1, &gf(11), 2, 3, cfg).unwrap().unwrap();
        assert_eq!(t.coords(), &[Fe(2)]);
        assert!(is_m_regular(&a1, &t, 2, 3).unwrap());
        assert_eq!(find_m_regular(&a1, &gf(11), 5, 3, cfg).unwrap(), None);
        for q in [5u64, 9, 11] {
            let t = find_m_regular(&a1, &gf(q), 7, 1, cfg).unwrap().unwrap();
            assert!(t.is_identity());
        }
        let tiny = SearchConfig { cap: 5, ..cfg };
        assert_eq!(
            find_m_regular(&a1, &gf(11), 1, 2, tiny),
            Err(RootDataError::SearchSpaceTooLarge { size: 10, cap: 5 })
        );
    }

    #[test]
    fn kernel_count_examples() {
        let a1 = RootDatum::a1();
        assert_eq!(kernel_count(&a1, &gf(11), &[2]), 2);
        assert_eq!(kernel_count(&a1, &gf(11), &[0]), 10);
        assert_eq!(kernel_count(&a1a1(), &gf(7), &[0, 0]), 36);
        assert_eq!(kernel_count(&a1a1(), &gf(7), &[1, 0]), 6);
        assert_eq!((r_mq(2, 11), r_mq(5, 11), r_mq(3, 11)), (2, 5, 1));
        assert_eq!(torus_order(&a1a1(), &gf(7)), Some(36));
    }

    #[test]
    fn audit_examples() {
        let a1 = RootDatum::a1();
        let rep = audit_bounds(&a1, &gf(11), 2, 3, SearchConfig::default()).unwrap();
        assert_eq!(rep.s_size, 10);
        assert_eq!(rep.r_mq, 2);
        assert_eq!(rep.torus_order, 10);
        assert_eq!(rep.m_max, 5);
        assert!(!rep.bound_holds);
        // t = 2 has order 10, so λ = 5χ kills its square: S covers the torus
        assert_eq!(rep.union_size, 10);
        assert!(!rep.exact_uncovered);
        // only differences matter for injectivity
        assert_eq!(rep.difference_size, 8);
        assert!(rep.difference_uncovered);
    }

    #[test]
    fn difference_set_is_inside_s() {
        for d in ["A1", "A2", "B2", "A1xA1"] {
            let d = RootDatum::parse(d).unwrap();
            for n in 1..4 {
                let s: HashSet<Weight> = weights_below(&d, 2 * n).unwrap().into_iter().collect();
                for v in difference_set(&d, n).unwrap() {
                    assert!(s.contains(&v));
                }
                let lower: HashSet<Weight> = weights_below(&d, n).unwrap().into_iter().collect();
                let upper: HashSet<Weight> = weights_below(&d, n + 1).unwrap().into_iter().collect();
                assert!(lower.is_subset(&upper));
            }
        }
    }

    #[test]
    fn strategies_agree() {
        let d = a1a1();
        let seq = SearchConfig { exec: Exec::Sequential, ..Default::default() };
        let par = SearchConfig::default();
        for q in [7u64, 13] {
            for m in [1u64, 2, 3] {
                let f = gf(q);
                assert_eq!(find_m_regular(&d, &f, m, 2, seq), find_m_regular(&d, &f, m, 2, par));
                assert_eq!(audit_bounds(&d, &f, m, 2, seq), audit_bounds(&d, &f, m, 2, par));
            }
        }
    }

    fn brute_kernel(d: &RootDatum, field: &Field, lam: &[i64]) -> u64 {
        let size = torus_order(d, field).unwrap();
        (0..size)
            .filter(|&i| {
                let t = TorusElement::from_logs(field, &index_to_logs(i, d.rank(), field.q()));
                t.eval(lam) == Fe::ONE
            })
            .count() as u64
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn kernel_count_matches_brute_force(
            q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17]),
            lam in proptest::collection::vec(-4i64..=4, 2),
        ) {
            let f = gf(q);
            prop_assert_eq!(kernel_count(&a1a1(), &f, &lam), brute_kernel(&a1a1(), &f, &lam));
            let a1 = RootDatum::a1();
            prop_assert_eq!(kernel_count(&a1, &f, &lam[..1]), brute_kernel(&a1, &f, &lam[..1]));
        }

        #[test]
        fn search_agrees_with_difference_union(
            q in prop::sample::select(vec![5u64, 7, 8, 9, 11, 13]),
            m in 1u64..6,
            n in 1u64..4,
        ) {
            let d = RootDatum::a1();
            let f = gf(q);
            let found = find_m_regular(&d, &f, m, n, SearchConfig::default()).unwrap();
            let rep = audit_bounds(&d, &f, m, n, SearchConfig::default()).unwrap();
            prop_assert_eq!(found.is_some(), rep.difference_uncovered);
            if rep.exact_uncovered {
                prop_assert!(found.is_some());
            }
            if let Some(t) = found {
                prop_assert!(is_m_regular(&d, &t, m, n).unwrap());
            }
        }
    }
}
