//! Graded Betti tables of square-free monomial ideals and the invariants
//! read off from them.
//!
//! Three independent routes compute `β_{i,j}(I)`:
//!
//! * Hochster's formula over the union-closure of the generator supports,
//! * the facet-complex formula `β_{p,q}(I) = Σ_U dim H̃_{p-1}(Γ^c_U)`,
//! * the Taylor complex, restricted to ideals with at most 12 generators.
//!
//! Depth and projective dimension of `R/I` come from the Auslander–Buchsbaum
//! identity `depth(R/I) = n - pd(R/I)` with `pd(R/I) = pd(I) + 1`.

use std::collections::{BTreeMap, HashSet};
use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{bit, compress, Ones};
use crate::error::{Error, Result};
use crate::ideals::SqfIdeal;
use crate::simplicial::{
    complement_complex, facet_complex, faces_from_table, homology_of_faces, induced_subcomplex, non_face_table,
    reduced_homology, FieldSpec,
};

/// Largest number of variables in the support of an ideal whose Betti table
/// we compute.
pub const MAX_BETTI_VARIABLES: usize = 24;

/// Generator cap for the Taylor-complex oracle.
pub const MAX_TAYLOR_GENERATORS: usize = 12;

/// Graded Betti numbers `β_{i,j}(I)` of an ideal (not of the quotient).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "BettiJson", from = "BettiJson")]
pub struct BettiTable {
    pub ambient_n: usize,
    entries: BTreeMap<(usize, usize), usize>,
}

#[derive(Serialize, Deserialize)]
struct BettiEntry {
    i: usize,
    j: usize,
    beta: usize,
}

#[derive(Serialize, Deserialize)]
struct BettiJson {
    ambient_n: usize,
    entries: Vec<BettiEntry>,
}

impl From<BettiTable> for BettiJson {
    fn from(t: BettiTable) -> Self {
        BettiJson {
            ambient_n: t.ambient_n,
            entries: t.entries().map(|(i, j, beta)| BettiEntry { i, j, beta }).collect(),
        }
    }
}

impl From<BettiJson> for BettiTable {
    fn from(j: BettiJson) -> Self {
        let mut t = BettiTable::new(j.ambient_n);
        for e in j.entries {
            t.add(e.i, e.j, e.beta);
        }
        t
    }
}

impl BettiTable {
    pub fn new(ambient_n: usize) -> Self {
        BettiTable {
            ambient_n,
            entries: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, i: usize, j: usize, beta: usize) {
        if beta > 0 {
            *self.entries.entry((i, j)).or_insert(0) += beta;
        }
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries `(i, j, β_{i,j})` in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `max { j - i : β_{i,j} ≠ 0 }`, or `None` for an empty table.
    pub fn regularity(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, j)| j - i).max()
    }

    /// Projective dimension of the ideal, `max { i : β_{i,·} ≠ 0 }`.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// Sum of `β_{i,j}` over `j`.
    pub fn total(&self, i: usize) -> usize {
        self.entries.range((i, 0)..(i + 1, 0)).map(|(_, &b)| b).sum()
    }

    /// CSV with header `i,j,beta`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,beta\n");
        for (i, j, b) in self.entries() {
            let _ = writeln!(out, "{i},{j},{b}");
        }
        out
    }

    /// Macaulay-style diagram: column `i`, row `j - i`, `.` for zero.
    pub fn diagram(&self) -> String {
        let Some(pd) = self.projective_dimension() else {
            return "0\n".to_string();
        };
        let lo = self.entries.keys().map(|&(i, j)| j - i).min().unwrap_or(0);
        let hi = self.regularity().unwrap_or(0);
        let mut rows: Vec<(String, Vec<String>)> = Vec::new();
        rows.push(("".into(), (0..=pd).map(|i| i.to_string()).collect()));
        rows.push(("total:".into(), (0..=pd).map(|i| self.total(i).to_string()).collect()));
        for d in lo..=hi {
            let cells = (0..=pd)
                .map(|i| match self.get(i, i + d) {
                    0 => ".".to_string(),
                    b => b.to_string(),
                })
                .collect();
            rows.push((format!("{d}:"), cells));
        }
        let label_w = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..=pd)
            .map(|c| rows.iter().map(|r| r.1[c].len()).max().unwrap_or(1))
            .collect();
        let mut out = String::new();
        for (label, cells) in rows {
            let _ = write!(out, "{label:>label_w$}");
            for (c, cell) in cells.iter().enumerate() {
                let _ = write!(out, " {cell:>w$}", w = widths[c]);
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.diagram())
    }
}

fn require_nonzero_proper(i: &SqfIdeal) -> Result<()> {
    if i.is_unit() {
        return Err(Error::invalid("the unit ideal has no resolution to speak of"));
    }
    if i.is_zero() {
        return Err(Error::invalid("the zero ideal has an empty Betti table"));
    }
    let m = i.support().count_ones() as usize;
    if m > MAX_BETTI_VARIABLES {
        return Err(Error::CapExceeded {
            what: "variables in the ideal's support",
            cap: MAX_BETTI_VARIABLES,
            got: m,
        });
    }
    Ok(())
}

/// Generators repacked onto the low `m` bits, `m` = support size.
fn packed_gens(i: &SqfIdeal) -> (usize, Vec<u64>) {
    let support = i.support();
    let gens = i.masks().iter().map(|&g| compress(g, support)).collect();
    (support.count_ones() as usize, gens)
}

/// All unions of nonempty sets of generators.
fn union_closure(m: usize, gens: &[u64]) -> Vec<u64> {
    let mut seen = vec![false; 1usize << m];
    let mut out: Vec<u64> = Vec::new();
    for &g in gens {
        if !seen[g as usize] {
            seen[g as usize] = true;
            out.push(g);
        }
    }
    let mut idx = 0;
    while idx < out.len() {
        let x = out[idx];
        for &g in gens {
            let y = x | g;
            if !seen[y as usize] {
                seen[y as usize] = true;
                out.push(y);
            }
        }
        idx += 1;
    }
    out.sort_unstable();
    out
}

fn collect_table(ambient_n: usize, parts: Vec<Vec<(usize, usize, usize)>>) -> BettiTable {
    let mut t = BettiTable::new(ambient_n);
    for (i, j, b) in parts.into_iter().flatten() {
        t.add(i, j, b);
    }
    t
}

/// Hochster's formula:
/// `β_{p,|σ|}(I) = dim H̃_{|σ|-p-2}(Δ_σ)` where `Δ` is the Stanley–Reisner
/// complex and `σ` runs over unions of generator supports.
pub fn betti_hochster(i: &SqfIdeal, f: FieldSpec) -> Result<BettiTable> {
    require_nonzero_proper(i)?;
    let (m, gens) = packed_gens(i);
    let in_ideal = non_face_table(&gens, m);
    let lattice = union_closure(m, &gens);
    let parts = lattice
        .par_iter()
        .map(|&sigma| {
            let q = sigma.count_ones() as usize;
            let mut faces: Vec<Vec<u64>> = vec![Vec::new(); q + 1];
            let mut sub = sigma;
            loop {
                if !in_ideal[sub as usize] {
                    faces[sub.count_ones() as usize].push(sub);
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & sigma;
            }
            while faces.last().is_some_and(|g| g.is_empty()) {
                faces.pop();
            }
            for g in faces.iter_mut() {
                g.sort_unstable();
            }
            let h = homology_of_faces(&faces, f)?;
            // dims[t] = H̃_{t-1}, and t - 1 = q - p - 2.
            Ok(h.dims
                .iter()
                .enumerate()
                .filter(|&(_, &d)| d > 0)
                .map(|(t, &d)| (q - t - 1, q, d))
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(collect_table(i.ambient(), parts))
}

/// Facet-complex formula: for every vertex set `U` containing at least one
/// generator, with `Γ` the subcomplex of `Δ(I)` generated by the facets
/// inside `U`, add `dim H̃_{p-1}(Γ^c_U)` to `β_{p,|U|}`.
///
/// Only `U` inside the support of `I` are visited. A vertex of `U` outside
/// every facet of `Γ` lies in every facet of `Γ^c_U`, which is then a cone
/// and contributes nothing, so summing over all `U` of size `q` or only over
/// those equal to the vertex support of `Γ` gives the same numbers.
pub fn betti_facet_formula(i: &SqfIdeal, f: FieldSpec) -> Result<BettiTable> {
    require_nonzero_proper(i)?;
    let delta = facet_complex(i)?;
    let support = delta.vertices();
    let m = support.count_ones() as usize;
    let spots: Vec<usize> = Ones(support).collect();
    let parts = (1u64..(1u64 << m))
        .into_par_iter()
        .map(|packed| {
            let u = Ones(packed).fold(0u64, |a, k| a | bit(spots[k]));
            let gamma = induced_subcomplex(&delta, u)?;
            if gamma.is_void() {
                return Ok(vec![]);
            }
            let h = reduced_homology(&complement_complex(&gamma, u)?, f)?;
            let q = u.count_ones() as usize;
            Ok(h.dims
                .iter()
                .enumerate()
                .filter(|&(_, &d)| d > 0)
                .map(|(p, &d)| (p, q, d))
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(collect_table(i.ambient(), parts))
}

/// Taylor-complex oracle: `β_{p,m}(I) = dim H̃_{p-1}(X_{<m})` where `X_{<m}`
/// is the set of generator subsets whose lcm strictly divides `m`.
pub fn betti_taylor_oracle(i: &SqfIdeal, f: FieldSpec) -> Result<BettiTable> {
    if i.num_generators() > MAX_TAYLOR_GENERATORS {
        return Err(Error::CapExceeded {
            what: "generators for the Taylor oracle",
            cap: MAX_TAYLOR_GENERATORS,
            got: i.num_generators(),
        });
    }
    require_nonzero_proper(i)?;
    let gens = i.masks();
    let g = gens.len();
    let mut lcm = vec![0u64; 1usize << g];
    for a in 1..lcm.len() {
        let low = a.trailing_zeros() as usize;
        lcm[a] = lcm[a & (a - 1)] | gens[low];
    }
    let degrees: Vec<u64> = lcm[1..].iter().copied().collect::<HashSet<_>>().into_iter().collect();
    let parts = degrees
        .par_iter()
        .map(|&target| {
            let table: Vec<bool> = lcm.iter().map(|&l| l & !target == 0 && l != target).collect();
            let h = homology_of_faces(&faces_from_table(g, &table), f)?;
            let q = target.count_ones() as usize;
            Ok(h.dims
                .iter()
                .enumerate()
                .filter(|&(_, &d)| d > 0)
                .map(|(p, &d)| (p, q, d))
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(collect_table(i.ambient(), parts))
}

/// Castelnuovo–Mumford regularity of `I`; the zero ideal has regularity 1
/// by convention.
pub fn regularity(i: &SqfIdeal, f: FieldSpec) -> Result<usize> {
    if i.is_unit() {
        return Err(Error::invalid("regularity of the unit ideal"));
    }
    if i.is_zero() {
        return Ok(1);
    }
    Ok(betti_hochster(i, f)?.regularity().expect("nonzero ideal has a generator"))
}

/// `pd(R/I)`: `pd(I) + 1` for nonzero `I`, 0 for the zero ideal.
pub fn pd_quotient(i: &SqfIdeal, f: FieldSpec) -> Result<usize> {
    if i.is_unit() {
        return Err(Error::invalid("projective dimension of R/R"));
    }
    if i.is_zero() {
        return Ok(0);
    }
    Ok(betti_hochster(i, f)?.projective_dimension().expect("nonzero ideal") + 1)
}

/// `depth(R/I) = n - pd(R/I)`.
pub fn depth_quotient(i: &SqfIdeal, f: FieldSpec) -> Result<usize> {
    Ok(i.ambient() - pd_quotient(i, f)?)
}

/// Smallest vertex set meeting every generator support.
fn min_transversal(gens: &[u64]) -> usize {
    fn go(gens: &[u64], chosen: u64, size: usize, best: &mut usize) {
        if size >= *best {
            return;
        }
        match gens.iter().find(|&&g| g & chosen == 0) {
            None => *best = size,
            Some(&g) => {
                for v in Ones(g) {
                    go(gens, chosen | bit(v), size + 1, best);
                }
            }
        }
    }
    let mut best = usize::MAX;
    go(gens, 0, 0, &mut best);
    best
}

/// `dim(R/I)`: `n` minus the least size of a vertex set meeting every
/// generator (equivalently the largest face of the Stanley–Reisner complex).
pub fn krull_dim_quotient(i: &SqfIdeal) -> Result<usize> {
    if i.is_unit() {
        return Err(Error::invalid("Krull dimension of R/R"));
    }
    if i.is_zero() {
        return Ok(i.ambient());
    }
    Ok(i.ambient() - min_transversal(i.masks()))
}

pub fn is_cohen_macaulay(i: &SqfIdeal, f: FieldSpec) -> Result<bool> {
    Ok(depth_quotient(i, f)? == krull_dim_quotient(i)?)
}

/// Whether an ideal generated in a single degree `d` has regularity `d`.
pub fn has_linear_resolution(i: &SqfIdeal, f: FieldSpec) -> Result<bool> {
    if i.is_unit() || i.is_zero() {
        return Err(Error::invalid("linear resolution of the zero or unit ideal"));
    }
    let d = i
        .equigenerated_degree()
        .ok_or_else(|| Error::invalid("generators have mixed degrees"))?;
    Ok(regularity(i, f)? == d)
}

/// All invariants of `R/I` that the tools report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantBundle {
    pub ambient_n: usize,
    pub reg: usize,
    pub pd_quotient: usize,
    pub depth_quotient: usize,
    pub krull_dim_quotient: usize,
    pub is_cm: bool,
    /// False for the zero ideal and for mixed generator degrees.
    pub linear_resolution: bool,
}

impl InvariantBundle {
    /// Computes every invariant from a single Betti table.
    pub fn compute(i: &SqfIdeal, f: FieldSpec) -> Result<(InvariantBundle, Option<BettiTable>)> {
        if i.is_unit() {
            return Err(Error::invalid("invariants of R/R"));
        }
        let n = i.ambient();
        let dim = krull_dim_quotient(i)?;
        if i.is_zero() {
            let b = InvariantBundle {
                ambient_n: n,
                reg: 1,
                pd_quotient: 0,
                depth_quotient: n,
                krull_dim_quotient: dim,
                is_cm: true,
                linear_resolution: false,
            };
            return Ok((b, None));
        }
        let table = betti_hochster(i, f)?;
        let reg = table.regularity().expect("nonzero ideal");
        let pd = table.projective_dimension().expect("nonzero ideal") + 1;
        let depth = n - pd;
        if depth > dim {
            return Err(Error::Invariant(format!("depth {depth} exceeds dimension {dim}")));
        }
        let b = InvariantBundle {
            ambient_n: n,
            reg,
            pd_quotient: pd,
            depth_quotient: depth,
            krull_dim_quotient: dim,
            is_cm: depth == dim,
            linear_resolution: i.equigenerated_degree() == Some(reg),
        };
        Ok((b, Some(table)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle, path, whisker};
    use crate::ideals::{edge_ideal, sqf_power};

    fn f() -> FieldSpec {
        FieldSpec::default()
    }

    fn all_routes(i: &SqfIdeal) -> BettiTable {
        let h = betti_hochster(i, f()).unwrap();
        assert_eq!(betti_facet_formula(i, f()).unwrap(), h, "facet route on {i}");
        if i.num_generators() <= MAX_TAYLOR_GENERATORS {
            assert_eq!(betti_taylor_oracle(i, f()).unwrap(), h, "Taylor route on {i}");
        }
        h
    }

    #[test]
    fn path_three() {
        let t = all_routes(&edge_ideal(&path(3).unwrap()));
        assert_eq!(t.get(0, 2), 2);
        assert_eq!(t.get(1, 3), 1);
        assert_eq!(t.entries().count(), 2);
    }

    #[test]
    fn principal_ideal() {
        let t = all_routes(&sqf_power(&path(4).unwrap(), 2));
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![(0, 4, 1)]);
    }

    #[test]
    fn five_cycle() {
        // Edge ideal of C_5: 5 generators, 5 linear syzygies, and the last step in degree 5.
        let t = all_routes(&edge_ideal(&cycle(5).unwrap()));
        assert_eq!(t.entries().collect::<Vec<_>>(), vec![(0, 2, 5), (1, 3, 5), (2, 5, 1)]);
        assert_eq!(t.regularity(), Some(3));
    }

    #[test]
    fn invariants_small() {
        let p6 = sqf_power(&path(6).unwrap(), 2);
        assert_eq!(regularity(&p6, f()).unwrap(), 4);
        assert_eq!(regularity(&SqfIdeal::zero(3).unwrap(), f()).unwrap(), 1);
        assert!(regularity(&SqfIdeal::unit(3).unwrap(), f()).is_err());
        assert_eq!(depth_quotient(&edge_ideal(&cycle(3).unwrap()), f()).unwrap(), 1);
        assert_eq!(depth_quotient(&sqf_power(&cycle(7).unwrap(), 2), f()).unwrap(), 4);
        let w3 = whisker(&cycle(3).unwrap()).unwrap();
        assert_eq!(depth_quotient(&sqf_power(&w3, 2), f()).unwrap(), 3);
        assert_eq!(krull_dim_quotient(&edge_ideal(&cycle(5).unwrap())).unwrap(), 2);
        assert_eq!(krull_dim_quotient(&SqfIdeal::zero(4).unwrap()).unwrap(), 4);
        let wp3 = whisker(&path(3).unwrap()).unwrap();
        assert!(is_cohen_macaulay(&sqf_power(&wp3, 2), f()).unwrap());
        assert!(is_cohen_macaulay(&SqfIdeal::zero(2).unwrap(), f()).unwrap());
        // C_5: depth 2 and dimension 2.
        let c5 = edge_ideal(&cycle(5).unwrap());
        assert_eq!(depth_quotient(&c5, f()).unwrap(), 2);
        assert!(is_cohen_macaulay(&c5, f()).unwrap());
    }

    #[test]
    fn linear_resolutions() {
        assert!(has_linear_resolution(&sqf_power(&cycle(7).unwrap(), 3), f()).unwrap());
        assert!(has_linear_resolution(&sqf_power(&cycle(8).unwrap(), 3), f()).unwrap());
        let w5 = whisker(&cycle(5).unwrap()).unwrap();
        assert!(!has_linear_resolution(&sqf_power(&w5, 2), f()).unwrap());
        let mixed = SqfIdeal::from_masks(3, vec![0b1, 0b110]).unwrap();
        assert!(has_linear_resolution(&mixed, f()).is_err());
    }

    #[test]
    fn thirteen_cycle_square() {
        let i = sqf_power(&cycle(13).unwrap(), 2);
        let t = betti_hochster(&i, f()).unwrap();
        assert!(t.get(6, 13) >= 1);
        assert_eq!(t.regularity(), Some(7));
    }

    #[test]
    fn output_formats() {
        let t = betti_hochster(&edge_ideal(&path(3).unwrap()), f()).unwrap();
        assert_eq!(t.to_csv(), "i,j,beta\n0,2,2\n1,3,1\n");
        assert_eq!(t.diagram(), "       0 1\ntotal: 2 1\n    2: 2 1\n");
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"ambient_n":3,"entries":[{"i":0,"j":2,"beta":2},{"i":1,"j":3,"beta":1}]}"#);
        assert_eq!(serde_json::from_str::<BettiTable>(&json).unwrap(), t);
    }

    #[test]
    fn bundle() {
        let (b, t) = InvariantBundle::compute(&edge_ideal(&cycle(5).unwrap()), f()).unwrap();
        assert_eq!(
            (b.reg, b.pd_quotient, b.depth_quotient, b.krull_dim_quotient, b.is_cm, b.linear_resolution),
            (3, 3, 2, 2, true, false)
        );
        assert!(t.is_some());
        let (z, t) = InvariantBundle::compute(&SqfIdeal::zero(4).unwrap(), f()).unwrap();
        assert_eq!((z.reg, z.depth_quotient, z.pd_quotient), (1, 4, 0));
        assert!(t.is_none());
    }
}
