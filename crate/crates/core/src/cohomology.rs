//! First cohomology of enumerated groups with coefficients in a G-module.
//!
//! A 1-cocycle satisfies `f(xy) = f(x) + x·f(y)`. Imposing the identity for
//! every generator `s` and every element `x` already forces it everywhere
//! (induction on word length), so `Z¹` is the null space of `|S|·|G|` block
//! equations. Two solvers are provided: one keeps an unknown per group
//! element, the other eliminates everything but the generator values along
//! the BFS tree and only imposes the non-tree Cayley edges.

use num_integer::Integer;
use thiserror::Error;

use crate::field::Fe;
use crate::linalg::{Echelon, Mat, Subspace};
use crate::matgroup::EnumeratedGroup;
use crate::modrep::{GModule, ModrepError};

/// Default bound on `|G| · dim M`.
pub const DEFAULT_COCYCLE_BUDGET: usize = 10_000_000;
/// Largest unknown count the per-element solver accepts.
pub const FULL_SYSTEM_MAX_UNKNOWNS: usize = 4_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("cocycle system of size {size} exceeds the budget {budget}")]
    SystemTooLarge { size: usize, budget: usize },
    #[error("module characteristic {module} differs from group characteristic {group}")]
    CharacteristicMismatch { module: u64, group: u64 },
    #[error(transparent)]
    Module(#[from] ModrepError),
}

/// Which computation produced an `H¹` dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum H1Method {
    /// `gcd(l, |G|) = 1`, nothing solved.
    CoprimeOrder,
    /// Unknowns are the generator values only.
    Eliminated,
    /// One unknown vector per group element.
    FullSystem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct H1Report {
    pub z1_dim: usize,
    pub b1_dim: usize,
    pub method: H1Method,
}

impl H1Report {
    pub fn h1_dim(&self) -> usize {
        self.z1_dim - self.b1_dim
    }
}

fn check(g: &EnumeratedGroup, m: &GModule, budget: usize) -> Result<(), CohomologyError> {
    m.check_compatible(g)?;
    if m.field().p() != g.field().p() {
        return Err(CohomologyError::CharacteristicMismatch {
            module: m.field().p(),
            group: g.field().p(),
        });
    }
    let size = g.order().saturating_mul(m.dim());
    if size > budget {
        return Err(CohomologyError::SystemTooLarge { size, budget });
    }
    Ok(())
}

/// `M^G`: common kernel of `ρ(s) − I` over the generators.
pub fn fixed_subspace(_g: &EnumeratedGroup, m: &GModule) -> Subspace {
    let f = m.field();
    let d = m.dim();
    if m.action().is_empty() {
        return Subspace::full(d);
    }
    let id = Mat::identity(f, d);
    let mut data = Vec::with_capacity(m.action().len() * d * d);
    for a in m.action() {
        data.extend_from_slice(a.sub(&id).data());
    }
    Mat::new(f, m.action().len() * d, d, data).expect("shape").kernel()
}

fn b1_dim(g: &EnumeratedGroup, m: &GModule) -> usize {
    m.dim() - fixed_subspace(g, m).dim()
}

/// `dim H¹(G, M)`, with the coprime-order shortcut.
pub fn h1_dim(g: &EnumeratedGroup, m: &GModule) -> Result<usize, CohomologyError> {
    Ok(h1_report(g, m, DEFAULT_COCYCLE_BUDGET)?.h1_dim())
}

/// `H¹` with the shortcut, falling back to the eliminated solver.
pub fn h1_report(g: &EnumeratedGroup, m: &GModule, budget: usize) -> Result<H1Report, CohomologyError> {
    check(g, m, budget)?;
    let l = m.field().p();
    if (g.order() as u64).gcd(&l) == 1 {
        return Ok(H1Report {
            z1_dim: b1_dim(g, m),
            b1_dim: b1_dim(g, m),
            method: H1Method::CoprimeOrder,
        });
    }
    h1_eliminated(g, m, budget)
}

/// Solves for the generator values `u = (f(s))_s`; every `f(x)` is a linear
/// function `A_x u` read off the BFS tree, and each non-tree edge `x → xs`
/// contributes `A_{xs} − A_x − ρ(x) E_s = 0`.
pub fn h1_eliminated(g: &EnumeratedGroup, m: &GModule, budget: usize) -> Result<H1Report, CohomologyError> {
    check(g, m, budget)?;
    let f = m.field();
    let d = m.dim();
    let k = g.num_generators();
    let width = k * d;
    let order = g.order();
    // rho[i]: d×d row-major; coef[i]: d×width row-major
    let mut rho: Vec<Fe> = vec![Fe::ZERO; order * d * d];
    let mut coef: Vec<Fe> = vec![Fe::ZERO; order * d * width];
    for i in 0..d {
        rho[i * d + i] = Fe::ONE;
    }
    for j in 1..order {
        let (p, s) = g.parent(j).expect("non-identity");
        let rp = Mat::new(f, d, d, rho[p * d * d..(p + 1) * d * d].to_vec()).expect("shape");
        let rj = rp.mul(&m.action()[s]);
        rho[j * d * d..(j + 1) * d * d].copy_from_slice(rj.data());
        let (head, tail) = coef.split_at_mut(j * d * width);
        let cj = &mut tail[..d * width];
        cj.copy_from_slice(&head[p * d * width..(p + 1) * d * width]);
        for r in 0..d {
            for c in 0..d {
                let idx = r * width + s * d + c;
                cj[idx] = f.add(cj[idx], rp.get(r, c));
            }
        }
    }
    let mut ech = Echelon::new(f, width);
    'edges: for x in 0..order {
        for s in 0..k {
            let y = g.right_mul(x, s);
            if g.parent(y) == Some((x, s)) {
                continue;
            }
            let cy = &coef[y * d * width..(y + 1) * d * width];
            let cx = &coef[x * d * width..(x + 1) * d * width];
            let rx = &rho[x * d * d..(x + 1) * d * d];
            for r in 0..d {
                let mut row: Vec<Fe> = (0..width)
                    .map(|c| f.sub(cy[r * width + c], cx[r * width + c]))
                    .collect();
                for c in 0..d {
                    let idx = s * d + c;
                    row[idx] = f.sub(row[idx], rx[r * d + c]);
                }
                ech.insert(row);
                if ech.rank() == width {
                    break 'edges;
                }
            }
        }
    }
    Ok(H1Report {
        z1_dim: width - ech.rank(),
        b1_dim: b1_dim(g, m),
        method: H1Method::Eliminated,
    })
}

/// One unknown vector `f(x)` per element, constraints `f(1) = 0` and
/// `f(s·x) = f(s) + s·f(x)` for every generator `s` and element `x`.
pub fn h1_full(g: &EnumeratedGroup, m: &GModule, budget: usize) -> Result<H1Report, CohomologyError> {
    check(g, m, budget)?;
    let f = m.field();
    let d = m.dim();
    let order = g.order();
    let width = order * d;
    if width > FULL_SYSTEM_MAX_UNKNOWNS {
        return Err(CohomologyError::SystemTooLarge {
            size: width,
            budget: FULL_SYSTEM_MAX_UNKNOWNS,
        });
    }
    let mut ech = Echelon::new(f, width);
    for r in 0..d {
        let mut row = vec![Fe::ZERO; width];
        row[r] = Fe::ONE;
        ech.insert(row);
    }
    let gens: Vec<usize> = (0..g.num_generators())
        .map(|s| g.right_mul(0, s))
        .collect();
    for (s, a) in m.action().iter().enumerate() {
        let si = gens[s];
        for x in 0..order {
            let sx = g.left_mul(s, x);
            for r in 0..d {
                let mut row = vec![Fe::ZERO; width];
                row[sx * d + r] = f.add(row[sx * d + r], Fe::ONE);
                row[si * d + r] = f.sub(row[si * d + r], Fe::ONE);
                for c in 0..d {
                    row[x * d + c] = f.sub(row[x * d + c], a.get(r, c));
                }
                ech.insert(row);
            }
        }
    }
    Ok(H1Report {
        z1_dim: width - ech.rank(),
        b1_dim: b1_dim(g, m),
        method: H1Method::FullSystem,
    })
}
