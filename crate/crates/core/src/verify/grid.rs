//! Grids of modules and ideals, and submodule enumeration for finite and
//! rank-one modules.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::parse_module;
use crate::linalg::Matrix;
use crate::module::{CanonicalForm, Presentation, Submodule};
use crate::ring::{Ideal, RingSpec};

/// A bounded family of modules and principal ideals over one ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSpec {
    pub ring: RingSpec,
    /// Bound on the product of the invariant factors of the torsion part.
    pub max_torsion_order: u64,
    #[serde(default)]
    pub max_free_rank: usize,
    pub ideal_generators: Vec<i64>,
    /// Explicit module expressions replacing the enumeration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module_whitelist: Option<Vec<String>>,
}

impl GridSpec {
    pub fn default_integers() -> Self {
        GridSpec {
            ring: RingSpec::Integers,
            max_torsion_order: 16,
            max_free_rank: 1,
            ideal_generators: vec![0, 2, 3, 4, 6],
            module_whitelist: None,
        }
    }

    /// Order bound 16 and every principal ideal of `Z/n`.
    pub fn default_modular(n: u64) -> Result<Self> {
        let ring = RingSpec::modulo(n)?;
        let mut ideals: Vec<i64> = vec![0];
        ideals.extend((1..n as i64).filter(|d| (n as i64) % d == 0));
        Ok(GridSpec {
            ring,
            max_torsion_order: 16,
            max_free_rank: 0,
            ideal_generators: ideals,
            module_whitelist: None,
        })
    }

    /// Default grids over `Z`, `Z/6` and `Z/8`.
    pub fn defaults() -> Vec<GridSpec> {
        vec![
            Self::default_integers(),
            Self::default_modular(6).expect("valid modulus"),
            Self::default_modular(8).expect("valid modulus"),
        ]
    }

    /// Distinct ideals in the order their generators are listed.
    pub fn ideals(&self) -> Vec<Ideal> {
        let mut out: Vec<Ideal> = Vec::new();
        for &g in &self.ideal_generators {
            let a = Ideal::principal(self.ring, g);
            if !out.contains(&a) {
                out.push(a);
            }
        }
        out
    }

    pub fn modules(&self) -> Result<Vec<CanonicalForm>> {
        match &self.module_whitelist {
            Some(list) => list
                .iter()
                .map(|s| Ok(parse_module(self.ring, s)?.canonical().clone()))
                .collect(),
            None => Ok(enumerate_forms(self)),
        }
    }
}

/// Divisibility chains `d_1 | d_2 | ...` with every `d_i >= 2`, `d_i | n`
/// over `Z/n`, and product at most `bound`, each extending `prefix`.
fn chains(
    bound: u64,
    modulus: Option<u64>,
    out: &mut Vec<Vec<u64>>,
    prefix: &mut Vec<u64>,
    product: u64,
) {
    out.push(prefix.clone());
    let last = prefix.last().copied().unwrap_or(1);
    let mut d = last.max(2);
    while product * d <= bound {
        if d % last == 0 && modulus.is_none_or(|n| n % d == 0) {
            prefix.push(d);
            chains(bound, modulus, out, prefix, product * d);
            prefix.pop();
        }
        d += 1;
    }
}

fn enumerate_forms(g: &GridSpec) -> Vec<CanonicalForm> {
    let modulus = match g.ring {
        RingSpec::Integers => None,
        RingSpec::IntegersMod(n) => Some(n),
    };
    let mut all = Vec::new();
    chains(g.max_torsion_order, modulus, &mut all, &mut Vec::new(), 1);
    all.sort_by_key(|c| (c.iter().product::<u64>(), c.len(), c.clone()));
    let free_ranks = if g.ring.is_integers() {
        0..=g.max_free_rank
    } else {
        0..=0
    };
    free_ranks
        .flat_map(|r| {
            all.iter().map(move |c| CanonicalForm {
                ring: g.ring,
                torsion_factors: c.iter().map(|&d| BigInt::from(d)).collect(),
                free_rank: r,
            })
        })
        .collect()
}

/// One presentation per isomorphism class in the grid, in grid order.
pub fn enumerate_modules(g: &GridSpec) -> Result<Vec<Presentation>> {
    Ok(g.modules()?
        .iter()
        .map(CanonicalForm::to_presentation)
        .collect())
}

/// Elements of a finite module in mixed radix over the factors `ds`.
struct FiniteGroup {
    ds: Vec<u64>,
}

impl FiniteGroup {
    fn size(&self) -> usize {
        self.ds.iter().product::<u64>() as usize
    }

    fn decode(&self, mut x: usize) -> Vec<u64> {
        self.ds
            .iter()
            .map(|&d| {
                let c = x as u64 % d;
                x /= d as usize;
                c
            })
            .collect()
    }

    fn encode(&self, v: &[u64]) -> usize {
        let mut x = 0usize;
        for (c, &d) in v.iter().zip(&self.ds).rev() {
            x = x * d as usize + (c % d) as usize;
        }
        x
    }

    fn add(&self, x: usize, y: usize) -> usize {
        let (u, v) = (self.decode(x), self.decode(y));
        let s: Vec<u64> = u.iter().zip(&v).map(|(a, b)| a + b).collect();
        self.encode(&s)
    }

    /// Closure of `set ∪ {x}` under addition.
    fn span_with(&self, set: &BTreeSet<usize>, x: usize) -> BTreeSet<usize> {
        let mut out = set.clone();
        let mut queue: VecDeque<usize> = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            if !out.insert(y) {
                continue;
            }
            let snapshot: Vec<usize> = out.iter().copied().collect();
            for z in snapshot {
                let s = self.add(y, z);
                if !out.contains(&s) {
                    queue.push_back(s);
                }
            }
        }
        out
    }

    /// Every subgroup, each with a list of generators, in order of size then
    /// lexicographic element set.
    fn subgroups(&self) -> Vec<(BTreeSet<usize>, Vec<usize>)> {
        let zero = BTreeSet::from([0usize]);
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([(zero, Vec::new())]);
        while let Some((h, gens)) = queue.pop_front() {
            if !seen.insert(h.iter().copied().collect()) {
                continue;
            }
            for x in 0..self.size() {
                if !h.contains(&x) {
                    let bigger = self.span_with(&h, x);
                    if !seen.contains(&bigger.iter().copied().collect::<Vec<_>>()) {
                        let mut g: Vec<usize> = gens.clone();
                        g.push(x);
                        queue.push_back((bigger, g));
                    }
                }
            }
            out.push((h, gens));
        }
        out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        out
    }
}

/// Largest multiple of the free generator used in submodules of `Z ⊕ T`.
pub const FREE_MULTIPLE_BOX: u64 = 4;

/// Submodules of the diagonal presentation of `c`.
///
/// Finite modules get every submodule. For `Z ⊕ T` over `Z` the submodules are
/// `T'` and `⟨(m, t)⟩ + T'` for subgroups `T' ⊆ T`, coset representatives `t`
/// of `T/T'` and `1 <= m <=` [`FREE_MULTIPLE_BOX`]; this covers every
/// submodule whose projection to `Z` is `mZ` with `m` in that range.
pub fn enumerate_submodules(c: &CanonicalForm) -> Result<Vec<Submodule>> {
    if c.free_rank > 1 {
        return Err(Error::UnsupportedShape(
            "submodules are enumerated for free rank at most 1".into(),
        ));
    }
    let ambient = c.to_presentation();
    let group = FiniteGroup {
        ds: c
            .torsion_factors
            .iter()
            .map(|d| {
                u64::try_from(d).map_err(|_| Error::UnsupportedShape("factor too large".into()))
            })
            .collect::<Result<_>>()?,
    };
    let rows = ambient.gens();
    let column = |free: u64, x: usize| -> Vec<BigInt> {
        let mut v: Vec<BigInt> = Vec::with_capacity(rows);
        if c.free_rank == 1 {
            v.push(BigInt::from(free));
        }
        v.extend(group.decode(x).into_iter().map(BigInt::from));
        v
    };
    let mut out = Vec::new();
    for (h, gens) in group.subgroups() {
        let mut cols: Vec<Vec<BigInt>> = gens.iter().map(|&x| column(0, x)).collect();
        out.push(Submodule::new(
            ambient.clone(),
            Matrix::from_columns(rows, &cols),
        )?);
        if c.free_rank == 0 {
            continue;
        }
        // one representative per coset of h: the least element
        let reps: BTreeSet<usize> = (0..group.size())
            .map(|t| {
                h.iter()
                    .map(|&y| group.add(t, y))
                    .min()
                    .expect("nonempty subgroup")
            })
            .collect();
        cols.push(Vec::new());
        for m in 1..=FREE_MULTIPLE_BOX {
            for &t in &reps {
                *cols.last_mut().expect("pushed") = column(m, t);
                out.push(Submodule::new(
                    ambient.clone(),
                    Matrix::from_columns(rows, &cols),
                )?);
            }
        }
    }
    Ok(out)
}
