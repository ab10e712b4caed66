//! Explicit finite matrix groups, enumerated in full.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::field::{Embedding, Fe, Field, FieldError};
use crate::linalg::Mat;

pub const DEFAULT_ELEMENT_CAP: usize = 2_097_152;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order exceeds the element cap {0}")]
    GroupTooLarge(usize),
    #[error("generator {0} is not invertible")]
    NotInvertible(usize),
    #[error("generator {index} has shape {rows}x{cols}, expected {n}x{n}")]
    BadShape {
        index: usize,
        rows: usize,
        cols: usize,
        n: usize,
    },
    #[error("generator {0} is defined over a different field")]
    FieldMismatch(usize),
    #[error("symmetric powers need 2x2 generators, got {0}x{0}")]
    NotTwoByTwo(usize),
    #[error("malformed group file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Generators of a matrix group `G ⊆ GL_n(k)`.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    field: Field,
    n: usize,
    generators: Vec<Mat>,
}

#[derive(Serialize, Deserialize)]
struct GroupFile {
    p: u64,
    e: u32,
    n: usize,
    generators: Vec<Vec<Vec<Value>>>,
}

impl GroupSpec {
    pub fn new(field: &Field, n: usize, generators: Vec<Mat>) -> Result<GroupSpec, GroupError> {
        for (i, g) in generators.iter().enumerate() {
            if g.field() != field {
                return Err(GroupError::FieldMismatch(i));
            }
            if g.rows() != n || g.cols() != n {
                return Err(GroupError::BadShape {
                    index: i,
                    rows: g.rows(),
                    cols: g.cols(),
                    n,
                });
            }
            if !g.is_invertible() {
                return Err(GroupError::NotInvertible(i));
            }
        }
        Ok(GroupSpec {
            field: field.clone(),
            n,
            generators,
        })
    }

    /// Standard generators `[[1,1],[0,1]]`, `[[1,0],[1,1]]` of SL₂ over the prime field.
    pub fn sl2(field: &Field) -> GroupSpec {
        let gens = vec![
            Mat::from_ints(field, &[vec![1, 1], vec![0, 1]]),
            Mat::from_ints(field, &[vec![1, 0], vec![1, 1]]),
        ];
        GroupSpec::new(field, 2, gens).expect("unipotent generators are invertible")
    }

    /// The trivial subgroup of `GL_n(k)`.
    pub fn trivial(field: &Field, n: usize) -> GroupSpec {
        GroupSpec {
            field: field.clone(),
            n,
            generators: Vec::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Mat] {
        &self.generators
    }

    /// The subgroup generated by a subset of the generators.
    pub fn restrict_generators(&self, indices: &[usize]) -> GroupSpec {
        GroupSpec {
            field: self.field.clone(),
            n: self.n,
            generators: indices.iter().map(|&i| self.generators[i].clone()).collect(),
        }
    }

    pub fn with_extra_generators(&self, extra: impl IntoIterator<Item = Mat>) -> GroupSpec {
        let mut generators = self.generators.clone();
        generators.extend(extra);
        GroupSpec {
            field: self.field.clone(),
            n: self.n,
            generators,
        }
    }

    /// The same group viewed inside `GL_n(k')`.
    pub fn embed(&self, emb: &Embedding) -> GroupSpec {
        GroupSpec {
            field: emb.dst().clone(),
            n: self.n,
            generators: self.generators.iter().map(|g| g.embed(emb)).collect(),
        }
    }

    /// Parses `{ "p", "e", "n", "generators": [[[...]]] }`.
    pub fn from_json(text: &str) -> Result<GroupSpec, GroupError> {
        let file: GroupFile =
            serde_json::from_str(text).map_err(|e| GroupError::Malformed(e.to_string()))?;
        let field = Field::new(file.p, file.e)?;
        let mut gens = Vec::with_capacity(file.generators.len());
        for (gi, rows) in file.generators.iter().enumerate() {
            if rows.len() != file.n || rows.iter().any(|r| r.len() != file.n) {
                return Err(GroupError::BadShape {
                    index: gi,
                    rows: rows.len(),
                    cols: rows.first().map_or(0, Vec::len),
                    n: file.n,
                });
            }
            let data = rows
                .iter()
                .flatten()
                .map(|v| field.from_json(v))
                .collect::<Result<Vec<Fe>, _>>()?;
            gens.push(Mat::new(&field, file.n, file.n, data).expect("shape checked"));
        }
        GroupSpec::new(&field, file.n, gens)
    }

    pub fn to_json(&self) -> String {
        let generators = self
            .generators
            .iter()
            .map(|g| {
                (0..self.n)
                    .map(|i| (0..self.n).map(|j| self.field.to_json(g.get(i, j))).collect())
                    .collect()
            })
            .collect();
        let file = GroupFile {
            p: self.field.p(),
            e: self.field.e(),
            n: self.n,
            generators,
        };
        serde_json::to_string(&file).expect("serializable")
    }
}

/// A fully enumerated group with its right Cayley graph.
///
/// Element 0 is the identity; elements appear in BFS order (layer, then
/// generator index), so indices are reproducible.
pub struct EnumeratedGroup {
    spec: GroupSpec,
    elements: Vec<Fe>,
    index: HashMap<Box<[Fe]>, u32>,
    /// `cayley[s][i]` = index of `elements[i] · generators[s]`.
    cayley: Vec<Vec<u32>>,
    /// BFS tree: `elements[i] = elements[parent.0] · generators[parent.1]`.
    parent: Vec<(u32, u32)>,
}

impl std::fmt::Debug for EnumeratedGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "EnumeratedGroup(order {}, {} generators, GL_{}({:?}))",
            self.order(),
            self.spec.generators.len(),
            self.spec.n,
            self.spec.field
        )
    }
}

/// BFS closure from the identity under right multiplication by the generators.
pub fn enumerate(spec: &GroupSpec, cap: usize) -> Result<EnumeratedGroup, GroupError> {
    let n = spec.n;
    let nn = n * n;
    let field = &spec.field;
    let id = Mat::identity(field, n);
    let mut elements: Vec<Fe> = id.data().to_vec();
    let mut index: HashMap<Box<[Fe]>, u32> = HashMap::new();
    index.insert(id.data().into(), 0);
    let mut parent = vec![(0u32, u32::MAX)];
    let ngens = spec.generators.len();
    let mut cayley: Vec<Vec<u32>> = vec![Vec::new(); ngens];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let x = Mat::new(field, n, n, elements[i * nn..(i + 1) * nn].to_vec()).expect("square");
        for (s, gen) in spec.generators.iter().enumerate() {
            let y = x.mul(gen);
            let j = match index.get(y.data()) {
                Some(&j) => j,
                None => {
                    let j = parent.len();
                    if j >= cap {
                        return Err(GroupError::GroupTooLarge(cap));
                    }
                    elements.extend_from_slice(y.data());
                    index.insert(y.data().into(), j as u32);
                    parent.push((i as u32, s as u32));
                    queue.push_back(j);
                    j as u32
                }
            };
            let row = &mut cayley[s];
            if row.len() <= i {
                row.resize(i + 1, 0);
            }
            row[i] = j;
        }
    }
    Ok(EnumeratedGroup {
        spec: spec.clone(),
        elements,
        index,
        cayley,
        parent,
    })
}

impl EnumeratedGroup {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn field(&self) -> &Field {
        &self.spec.field
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn num_generators(&self) -> usize {
        self.spec.generators.len()
    }

    pub fn element_data(&self, i: usize) -> &[Fe] {
        let nn = self.spec.n * self.spec.n;
        &self.elements[i * nn..(i + 1) * nn]
    }

    pub fn element(&self, i: usize) -> Mat {
        let n = self.spec.n;
        Mat::new(&self.spec.field, n, n, self.element_data(i).to_vec()).expect("square")
    }

    pub fn elements(&self) -> impl Iterator<Item = Mat> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        self.index.get(m.data()).map(|&i| i as usize)
    }

    pub fn contains(&self, m: &Mat) -> bool {
        self.index_of(m).is_some()
    }

    /// Index of `elements[i] · generators[s]`.
    pub fn right_mul(&self, i: usize, s: usize) -> usize {
        self.cayley[s][i] as usize
    }

    /// Index of `generators[s] · elements[i]`.
    pub fn left_mul(&self, s: usize, i: usize) -> usize {
        let y = self.spec.generators[s].mul(&self.element(i));
        self.index_of(&y).expect("group is closed")
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index_of(&self.element(i).mul(&self.element(j)))
            .expect("group is closed")
    }

    pub fn inverse(&self, i: usize) -> usize {
        let inv = self.element(i).inverse().expect("invertible");
        self.index_of(&inv).expect("group is closed")
    }

    /// BFS-tree parent `(p, s)` with `element(i) = element(p) · generators[s]`.
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        (i != 0).then(|| {
            let (p, s) = self.parent[i];
            (p as usize, s as usize)
        })
    }

    /// Generator indices whose product (left to right) is element `i`.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while i != 0 {
            let (p, s) = self.parent[i];
            w.push(s as usize);
            i = p as usize;
        }
        w.reverse();
        w
    }

    /// Image of element `i` under a representation given on generators.
    pub fn evaluate(&self, i: usize, images: &[Mat], identity: &Mat) -> Mat {
        self.word(i)
            .into_iter()
            .fold(identity.clone(), |acc, s| acc.mul(&images[s]))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.spec.generators;
        g.iter().enumerate().all(|(i, a)| g[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }
}

fn commutator(a: &Mat, b: &Mat) -> Mat {
    let ai = a.inverse().expect("invertible");
    let bi = b.inverse().expect("invertible");
    ai.mul(&bi).mul(a).mul(b)
}

/// Normal closure of a set of elements, enumerated. The closure is a
/// subgroup of `g`, so it never exceeds `g`'s order.
pub fn normal_closure(g: &EnumeratedGroup, seeds: Vec<Mat>) -> EnumeratedGroup {
    let field = g.field();
    let n = g.n();
    let id = Mat::identity(field, n);
    let mut gens: Vec<Mat> = Vec::new();
    for s in seeds {
        if s != id && !gens.contains(&s) {
            gens.push(s);
        }
    }
    let outer: Vec<(Mat, Mat)> = g
        .spec
        .generators
        .iter()
        .map(|s| (s.clone(), s.inverse().expect("invertible")))
        .collect();
    loop {
        let spec = GroupSpec {
            field: field.clone(),
            n,
            generators: gens.clone(),
        };
        let h = enumerate(&spec, g.order()).expect("subgroup fits in the parent");
        let missing = outer.iter().find_map(|(s, si)| {
            gens.iter()
                .map(|x| si.mul(x).mul(s))
                .find(|c| !h.contains(c))
        });
        match missing {
            Some(c) => gens.push(c),
            None => return h,
        }
    }
}

/// `[G, G]`: the normal closure of the generator commutators.
pub fn derived_subgroup(g: &EnumeratedGroup) -> EnumeratedGroup {
    let gens = &g.spec.generators;
    let mut seeds = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            seeds.push(commutator(&gens[i], &gens[j]));
        }
    }
    normal_closure(g, seeds)
}

/// Whether `G` has a nontrivial quotient of `l`-power order, i.e. whether
/// `l` divides the order of the abelianization.
pub fn has_l_power_quotient(g: &EnumeratedGroup, l: u64) -> bool {
    let d = derived_subgroup(g);
    let index = (g.order() / d.order()) as u64;
    index.is_multiple_of(l)
}

/// `k^× · G`: adjoin the scalar matrices.
pub fn scalar_closure(g: &EnumeratedGroup, cap: usize) -> Result<EnumeratedGroup, GroupError> {
    let field = g.field();
    let c = Mat::scalar(field, g.n(), field.primitive());
    let spec = if g.contains(&c) {
        g.spec.clone()
    } else {
        g.spec.with_extra_generators([c])
    };
    enumerate(&spec, cap)
}

/// `Sym^k` of a 2x2 matrix on the basis `x^k, x^{k-1}y, ..., y^k`.
///
/// Row `i` holds the coefficients of `(ax + by)^{k-i} (cx + dy)^i`, which
/// makes `g ↦ Sym^k(g)` multiplicative.
pub fn sym_power_matrix(g: &Mat, k: usize) -> Mat {
    let f = g.field();
    let (a, b, c, d) = (g.get(0, 0), g.get(0, 1), g.get(1, 0), g.get(1, 1));
    let conv = |u: &[Fe], v: &[Fe]| -> Vec<Fe> {
        let mut out = vec![Fe::ZERO; u.len() + v.len() - 1];
        for (i, &x) in u.iter().enumerate() {
            f.axpy(&mut out[i..i + v.len()], x, v);
        }
        out
    };
    let mut m = Mat::zeros(f, k + 1, k + 1);
    for i in 0..=k {
        let mut acc = vec![Fe::ONE];
        for _ in 0..k - i {
            acc = conv(&acc, &[a, b]);
        }
        for _ in 0..i {
            acc = conv(&acc, &[c, d]);
        }
        for (j, &v) in acc.iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m
}

pub fn sym_power_generators(spec: &GroupSpec, k: usize) -> Result<GroupSpec, GroupError> {
    if spec.n != 2 {
        return Err(GroupError::NotTwoByTwo(spec.n));
    }
    GroupSpec::new(
        &spec.field,
        k + 1,
        spec.generators.iter().map(|g| sym_power_matrix(g, k)).collect(),
    )
}
