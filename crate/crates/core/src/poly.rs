//! Univariate polynomials over GF(q): arithmetic, factorization, roots.
//!
//! Factorization is the usual three-stage pipeline: squarefree decomposition
//! (with p-th roots in characteristic p), distinct-degree splitting, then
//! randomized equal-degree splitting driven by a caller-supplied seed.

use std::fmt;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{Embedding, Fe, Field, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A polynomial with coefficients low degree first; no trailing zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Fe>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = self.field.show(c);
            match (i, c == Fe::ONE) {
                (0, _) => write!(f, "{cs}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{cs}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{cs}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    /// From integer coefficients in the prime subfield, low degree first.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Fe::ONE)
    }

    pub fn constant(field: &Field, c: Fe) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![Fe::ZERO, Fe::ONE])
    }

    /// `x - a`.
    pub fn linear(field: &Field, a: Fe) -> Poly {
        Poly::new(field, vec![field.neg(a), Fe::ONE])
    }

    /// `c x^d`.
    pub fn monomial(field: &Field, c: Fe, d: usize) -> Poly {
        let mut coeffs = vec![Fe::ZERO; d + 1];
        coeffs[d] = c;
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Fe::ONE]
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Fe::ONE
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead());
        self.scale(inv)
    }

    pub fn scale(&self, c: Fe) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            &self.field,
            (0..n)
                .map(|i| self.field.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            &self.field,
            (0..n)
                .map(|i| self.field.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            f.axpy(&mut out[i..i + other.coeffs.len()], a, &other.coeffs);
        }
        Poly::new(f, out)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let f = &self.field;
        let dd = d.deg();
        if self.coeffs.len() <= dd {
            return (Poly::zero(f), self.clone());
        }
        let inv_lead = f.inv(d.lead());
        let mut r = self.coeffs.clone();
        let mut quot = vec![Fe::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv_lead);
            if c.is_zero() {
                continue;
            }
            quot[i - dd] = c;
            let neg = f.neg(c);
            f.axpy(&mut r[i - dd..=i], neg, &d.coeffs);
        }
        r.truncate(dd);
        (Poly::new(f, quot), Poly::new(f, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn mul_mod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            base = base.mul_mod(&base, m);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        Poly::new(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| f.mul(f.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, a: Fe) -> Fe {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, a), c))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `s·self + t·other = g` and `g` the monic gcd.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s2);
            (t0, t1) = (t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lead());
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Coefficients pushed through a field embedding.
    pub fn embed(&self, emb: &Embedding) -> Poly {
        Poly::new(
            emb.dst(),
            self.coeffs.iter().map(|&c| emb.apply(c)).collect(),
        )
    }

    /// `g` with `g(x)^p = self(x)`; requires every exponent to be a multiple of p.
    fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.p() as usize;
        // inverse Frobenius on coefficients: a -> a^(q/p)
        let inv_frob = f.q() / f.p();
        Poly::new(
            f,
            self.coeffs
                .iter()
                .step_by(p)
                .map(|&c| f.pow_u(c, inv_frob))
                .collect(),
        )
    }

    fn sort_key(&self) -> (usize, Vec<u64>) {
        (
            self.deg(),
            self.coeffs.iter().map(|&c| self.field.lex_key(c)).collect(),
        )
    }
}

/// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)`, `g_i` squarefree.
pub fn squarefree_decomposition(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let p = f.field().p() as usize;
    let df = f.derivative();
    if df.is_zero() {
        for (g, i) in squarefree_decomposition(&f.pth_root()) {
            out.push((g, i * p));
        }
        return out;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if fac.deg() > 0 {
            out.push((fac, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
    }
    if c.deg() > 0 {
        for (g, j) in squarefree_decomposition(&c.pth_root()) {
            out.push((g, j * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial: `(product, degree)`.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field().clone();
    let q = field.q();
    let x = Poly::x(&field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut out = Vec::new();
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.pow_mod(q, &rest);
        let g = rest.gcd(&h.sub(&x));
        if g.deg() > 0 {
            rest = rest.div_exact(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let dr = rest.deg();
        out.push((rest, dr));
    }
    out
}

fn random_poly(field: &Field, below: usize, rng: &mut ChaCha8Rng) -> Poly {
    let q = field.q();
    Poly::new(
        field,
        (0..below)
            .map(|_| Fe(rng.gen_range(0..q) as u32))
            .collect(),
    )
}

/// Cantor–Zassenhaus splitting of a monic squarefree product of degree-`d` irreducibles.
pub fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.deg();
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field().clone();
    let q = field.q();
    loop {
        let a = random_poly(&field, n, rng);
        if a.deg() == 0 {
            continue;
        }
        let b = if field.p() == 2 {
            // absolute trace down to GF(2)
            let bits = field.e() as usize * d;
            let mut t = a.clone();
            let mut s = a.clone();
            for _ in 1..bits {
                t = t.mul_mod(&t, f);
                s = s.add(&t);
            }
            s
        } else {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
            let mut t = a.rem(f);
            let mut s = t.clone();
            for _ in 1..d {
                t = t.pow_mod(q, f);
                s = s.mul_mod(&t, f);
            }
            s.pow_mod((q - 1) / 2, f).sub(&Poly::one(&field))
        };
        let g = f.gcd(&b);
        if g.deg() > 0 && g.deg() < n {
            let h = f.div_exact(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Complete factorization of a monic polynomial into monic irreducibles with multiplicity.
///
/// The result is sorted by degree, then by coefficients, and is reproducible
/// for a given seed.
pub fn factor(f: &Poly, seed: u64) -> Result<Vec<(Poly, usize)>, PolyError> {
    if !f.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<(Poly, usize)> = Vec::new();
    for (g, mult) in squarefree_decomposition(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                match out.iter_mut().find(|(p, _)| *p == irr) {
                    Some(entry) => entry.1 += mult,
                    None => out.push((irr, mult)),
                }
            }
        }
    }
    out.sort_by_key(|(p, _)| p.sort_key());
    Ok(out)
}

/// Roots lying in the coefficient field, with multiplicity, sorted by lexicographic key.
pub fn roots_in_field(f: &Poly, seed: u64) -> Vec<(Fe, usize)> {
    if f.deg() == 0 {
        return Vec::new();
    }
    let mut roots: Vec<(Fe, usize)> = factor(&f.monic(), seed)
        .expect("monic")
        .into_iter()
        .filter(|(p, _)| p.deg() == 1)
        .map(|(p, m)| (f.field().neg(p.coeff(0)), m))
        .collect();
    let field = f.field().clone();
    roots.sort_by_key(|&(r, _)| field.lex_key(r));
    roots
}

/// The splitting field of `f` over its coefficient field, with the embedding
/// of the coefficient field and all roots (with multiplicity).
pub struct SplittingField {
    pub field: Field,
    pub embedding: Embedding,
    pub roots: Vec<(Fe, usize)>,
}

/// Splits a monic polynomial in the extension of degree lcm(irreducible-factor degrees).
pub fn splitting_field(f: &Poly) -> Result<SplittingField, PolyError> {
    let base = f.field().clone();
    let factors = factor(f, 0)?;
    let degree = factors.iter().fold(1usize, |acc, (p, _)| acc.lcm(&p.deg()));
    let ext = if degree == 1 {
        base.clone()
    } else {
        Field::new(base.p(), base.e() * degree as u32)?
    };
    let embedding = Embedding::new(&base, &ext)?;
    let roots = roots_in_field(&f.embed(&embedding), 0);
    Ok(SplittingField {
        field: ext,
        embedding,
        roots,
    })
}

/// All roots of `f` in one extension field, with multiplicity.
pub fn roots_in_splitting_field(f: &Poly) -> Result<(Field, Vec<(Fe, usize)>), PolyError> {
    let split = splitting_field(f)?;
    Ok((split.field, split.roots))
}

/// Multiplicity of `a` as a root of `f`, by repeated exact division by `x - a`.
pub fn root_multiplicity(f: &Poly, a: Fe) -> usize {
    if f.is_zero() {
        return usize::MAX;
    }
    let lin = Poly::linear(f.field(), a);
    let mut cur = f.clone();
    let mut m = 0;
    while let Some(q) = cur.div_exact(&lin) {
        cur = q;
        m += 1;
    }
    m
}

/// True iff `f(a) = 0` and `(x - a)` divides `f` exactly once.
pub fn is_simple_root(f: &Poly, a: Fe) -> bool {
    !f.is_zero() && root_multiplicity(f, a) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64, e: u32) -> Field {
        Field::new(p, e).unwrap()
    }

    #[test]
    fn factor_examples() {
        let f11 = f(11, 1);
        let poly = Poly::from_ints(&f11, &[1, 3, 1]);
        // oracle: (x-2)(x-6) = x^2 - 8x + 12 = x^2 + 3x + 1 mod 11
        assert_eq!(Poly::linear(&f11, Fe(2)).mul(&Poly::linear(&f11, Fe(6))), poly);
        let fac = factor(&poly, 0).unwrap();
        assert_eq!(
            fac,
            vec![
                (Poly::from_ints(&f11, &[5, 1]), 1),
                (Poly::from_ints(&f11, &[9, 1]), 1)
            ]
        );

        let f5 = f(5, 1);
        let sq = Poly::linear(&f5, Fe(1)).pow(2);
        assert_eq!(factor(&sq, 3).unwrap(), vec![(Poly::linear(&f5, Fe(1)), 2)]);

        let f7 = f(7, 1);
        let x2p1 = Poly::from_ints(&f7, &[1, 0, 1]);
        assert!((0..7).all(|a| x2p1.eval(Fe(a)) != Fe(0)));
        assert_eq!(factor(&x2p1, 9).unwrap(), vec![(x2p1.clone(), 1)]);

        assert_eq!(factor(&x2p1.scale(Fe(3)), 0), Err(PolyError::NotMonic));
    }

    #[test]
    fn inseparable_input() {
        // x^5 - 2 over GF(5) is (x - 2)^5 since 2^5 = 2
        let f5 = f(5, 1);
        let poly = Poly::from_ints(&f5, &[-2, 0, 0, 0, 0, 1]);
        assert!(poly.derivative().is_zero());
        assert_eq!(factor(&poly, 1).unwrap(), vec![(Poly::linear(&f5, Fe(2)), 5)]);
        assert_eq!(root_multiplicity(&poly, Fe(2)), 5);
        assert!(!is_simple_root(&poly, Fe(2)));
    }

    #[test]
    fn splitting_examples() {
        let f11 = f(11, 1);
        let (ctx, roots) = roots_in_splitting_field(&Poly::from_ints(&f11, &[1, 3, 1])).unwrap();
        assert_eq!(ctx.q(), 11);
        assert_eq!(roots, vec![(Fe(2), 1), (Fe(6), 1)]);

        let f7 = f(7, 1);
        let x2p1 = Poly::from_ints(&f7, &[1, 0, 1]);
        let split = splitting_field(&x2p1).unwrap();
        assert_eq!(split.field.q(), 49);
        assert_eq!(split.roots.len(), 2);
        for &(r, m) in &split.roots {
            assert_eq!(m, 1);
            assert_eq!(split.field.mul(r, r), split.field.from_int(-1));
        }

        let f5 = f(5, 1);
        let cube = Poly::linear(&f5, Fe(1)).pow(4);
        let (_, roots) = roots_in_splitting_field(&cube).unwrap();
        assert_eq!(roots, vec![(Fe(1), 4)]);
    }

    #[test]
    fn simple_root_examples() {
        let f11 = f(11, 1);
        let poly = Poly::from_ints(&f11, &[1, 3, 1]);
        assert!(is_simple_root(&poly, Fe(2)));
        assert_eq!(poly.eval(Fe(3)), Fe(8));
        assert!(!is_simple_root(&poly, Fe(3)));
        let f5 = f(5, 1);
        assert!(!is_simple_root(&Poly::linear(&f5, Fe(1)).pow(2), Fe(1)));
    }

    #[test]
    fn ext_gcd_bezout() {
        let f7 = f(7, 1);
        let a = Poly::from_ints(&f7, &[1, 2, 0, 1]);
        let b = Poly::from_ints(&f7, &[3, 1, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
        assert_eq!(g, a.gcd(&b));
    }

    #[test]
    fn characteristic_two_splitting() {
        let f4 = f(2, 2);
        // x^3 - 1 splits over GF(4) into three distinct linear factors
        let poly = Poly::new(&f4, vec![Fe(1), Fe(0), Fe(0), Fe(1)]);
        let roots = roots_in_field(&poly, 5);
        assert_eq!(roots.len(), 3);
        for (r, m) in roots {
            assert_eq!(m, 1);
            assert_eq!(poly.eval(r), Fe::ZERO);
        }
    }

    fn monic_strategy() -> impl Strategy<Value = Poly> {
        (
            prop::sample::select(vec![(5u64, 1u32), (7, 1), (11, 1), (5, 2), (7, 2)]),
            1usize..=8,
            prop::collection::vec(any::<u32>(), 8),
        )
            .prop_map(|((p, e), deg, raw)| {
                let field = Field::new(p, e).unwrap();
                let mut coeffs: Vec<Fe> = raw[..deg].iter().map(|&c| Fe(c % field.q() as u32)).collect();
                coeffs.push(Fe::ONE);
                Poly::new(&field, coeffs)
            })
    }

    fn small_split_strategy() -> impl Strategy<Value = Poly> {
        (
            prop::sample::select(vec![5u64, 7, 11]),
            1usize..=5,
            prop::collection::vec(any::<u32>(), 5),
        )
            .prop_map(|(p, deg, raw)| {
                let field = Field::new(p, 1).unwrap();
                let mut coeffs: Vec<Fe> = raw[..deg].iter().map(|&c| Fe(c % p as u32)).collect();
                coeffs.push(Fe::ONE);
                Poly::new(&field, coeffs)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn factorization_round_trip(poly in monic_strategy(), seed in any::<u64>()) {
            let fac = factor(&poly, seed).unwrap();
            let mut prod = Poly::one(poly.field());
            for (g, m) in &fac {
                prop_assert!(g.is_monic());
                prop_assert_eq!(factor(g, seed).unwrap(), vec![(g.clone(), 1)]);
                prod = prod.mul(&g.pow(*m as u64));
            }
            prop_assert_eq!(prod, poly.clone());
            prop_assert_eq!(factor(&poly, seed).unwrap(), fac);
        }

        #[test]
        fn split_roots_are_roots(poly in small_split_strategy()) {
            let split = splitting_field(&poly).unwrap();
            let embedded = poly.embed(&split.embedding);
            let total: usize = split.roots.iter().map(|(_, m)| m).sum();
            prop_assert_eq!(total, poly.deg());
            for &(r, m) in &split.roots {
                prop_assert_eq!(embedded.eval(r), Fe::ZERO);
                prop_assert_eq!(root_multiplicity(&embedded, r), m);
                prop_assert_eq!(is_simple_root(&embedded, r), m == 1);
            }
        }
    }
}
