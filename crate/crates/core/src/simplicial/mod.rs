//! Simplicial complexes and exact reduced homology over a field.
//!
//! Faces are `u64` vertex masks. A complex is stored by its facets; the void
//! complex has no facets and the irrelevant complex has the single facet `∅`.

mod rank;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use rank::{exact_rank, SparseMatrix};

use crate::bits::{bit, compress, expand, indices, is_subset, Ones};
use crate::error::{Error, Result};
use crate::ideals::SqfIdeal;

/// Complexes on more vertices than this are closed downward through a hash set
/// instead of a dense table.
pub const MAX_DENSE_VERTICES: usize = 24;

/// Coefficient field: `Q` (characteristic 0) or `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct FieldSpec {
    characteristic: u32,
}

impl FieldSpec {
    pub const DEFAULT_PRIME: u32 = 32003;

    /// `0` or a prime below `2^31`.
    pub fn new(characteristic: u32) -> Result<Self> {
        let ok = characteristic == 0 || (characteristic < (1 << 31) && is_prime(characteristic));
        if !ok {
            return Err(Error::invalid(format!(
                "field characteristic {characteristic} is neither 0 nor a prime below 2^31"
            )));
        }
        Ok(FieldSpec { characteristic })
    }

    pub fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec {
            characteristic: Self::DEFAULT_PRIME,
        }
    }
}

impl TryFrom<u32> for FieldSpec {
    type Error = Error;
    fn try_from(c: u32) -> Result<Self> {
        FieldSpec::new(c)
    }
}

impl From<FieldSpec> for u32 {
    fn from(f: FieldSpec) -> u32 {
        f.characteristic
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.characteristic {
            0 => write!(f, "QQ"),
            p => write!(f, "ZZ/{p}"),
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Reduced homology dimensions. `dims[t]` is `dim H̃_{t-1}`, so `dims[0]`
/// is the degree `-1` group; the void complex has `dims` empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub dims: Vec<usize>,
    pub field_char: u32,
}

impl HomologyProfile {
    /// `dim H̃_i` for `i >= -1`.
    pub fn reduced(&self, i: isize) -> usize {
        usize::try_from(i + 1)
            .ok()
            .and_then(|t| self.dims.get(t).copied())
            .unwrap_or(0)
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(self.dims.iter().map(|&d| d as i64))
    }
}

fn alternating_sum(it: impl Iterator<Item = i64>) -> i64 {
    it.enumerate()
        .map(|(t, v)| if t % 2 == 0 { v } else { -v })
        .sum()
}

/// Simplicial complex on `vertices`, given by its facets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ComplexJson", into = "ComplexJson")]
pub struct SimplicialComplex {
    vertices: u64,
    facets: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: Vec<usize>,
    facets: Vec<Vec<usize>>,
}

impl From<SimplicialComplex> for ComplexJson {
    fn from(d: SimplicialComplex) -> Self {
        ComplexJson {
            vertices: indices(d.vertices),
            facets: d.facets.iter().map(|&f| indices(f)).collect(),
        }
    }
}

impl TryFrom<ComplexJson> for SimplicialComplex {
    type Error = Error;
    fn try_from(j: ComplexJson) -> Result<Self> {
        let to_mask = |vs: &[usize]| -> Result<u64> {
            vs.iter().try_fold(0u64, |m, &v| {
                if v >= 64 {
                    Err(Error::invalid(format!("vertex {v} out of range")))
                } else {
                    Ok(m | bit(v))
                }
            })
        };
        let facets = j.facets.iter().map(|f| to_mask(f)).collect::<Result<Vec<_>>>()?;
        SimplicialComplex::from_facets(to_mask(&j.vertices)?, facets)
    }
}

/// Keeps the inclusion-maximal sets, sorted by `(size, mask)`.
fn maximal_sets(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_unstable_by_key(|&s| (std::cmp::Reverse(s.count_ones()), s));
    sets.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| is_subset(s, k)) {
            kept.push(s);
        }
    }
    kept.sort_unstable_by_key(|&s| (s.count_ones(), s));
    kept
}

impl SimplicialComplex {
    /// Complex generated by `facets`; non-maximal sets are dropped.
    pub fn from_facets(vertices: u64, facets: Vec<u64>) -> Result<Self> {
        if facets.iter().any(|&f| !is_subset(f, vertices)) {
            return Err(Error::invalid("facet outside the vertex set"));
        }
        Ok(SimplicialComplex {
            vertices,
            facets: maximal_sets(facets),
        })
    }

    /// No faces at all.
    pub fn void(vertices: u64) -> Self {
        SimplicialComplex {
            vertices,
            facets: vec![],
        }
    }

    /// Only the empty face.
    pub fn irrelevant(vertices: u64) -> Self {
        SimplicialComplex {
            vertices,
            facets: vec![0],
        }
    }

    /// The full simplex on `vertices`.
    pub fn simplex(vertices: u64) -> Self {
        SimplicialComplex {
            vertices,
            facets: vec![vertices],
        }
    }

    pub fn vertices(&self) -> u64 {
        self.vertices
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_irrelevant(&self) -> bool {
        self.facets == [0]
    }

    /// Dimension, `None` for the void complex.
    pub fn dim(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.count_ones() as isize - 1).max()
    }

    pub fn contains_face(&self, face: u64) -> bool {
        self.facets.iter().any(|&f| is_subset(face, f))
    }

    /// Faces grouped by cardinality, each group sorted by mask.
    pub fn faces_by_size(&self) -> Vec<Vec<u64>> {
        let support = self.facets.iter().fold(0, |a, &f| a | f);
        let m = support.count_ones() as usize;
        if self.is_void() {
            return vec![];
        }
        if m <= MAX_DENSE_VERTICES {
            let packed: Vec<u64> = self.facets.iter().map(|&f| compress(f, support)).collect();
            let table = down_closure_dense(m, &packed);
            faces_from_table(m, &table)
                .into_iter()
                .map(|group| {
                    group
                        .into_iter()
                        .map(|c| expand(c, support))
                        .collect()
                })
                .collect()
        } else {
            let mut seen: HashSet<u64> = HashSet::new();
            let mut stack: Vec<u64> = self.facets.clone();
            while let Some(f) = stack.pop() {
                if seen.insert(f) {
                    stack.extend(Ones(f).map(|v| f & !bit(v)));
                }
            }
            let max = self.facets.iter().map(|f| f.count_ones()).max().unwrap_or(0) as usize;
            let mut groups = vec![Vec::new(); max + 1];
            for f in seen {
                groups[f.count_ones() as usize].push(f);
            }
            for g in groups.iter_mut() {
                g.sort_unstable();
            }
            groups
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex serializes")
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_void() {
            return write!(f, "void");
        }
        let facets: Vec<String> = self
            .facets
            .iter()
            .map(|&m| {
                let vs: Vec<String> = Ones(m).map(|v| (v + 1).to_string()).collect();
                format!("[{}]", vs.join(","))
            })
            .collect();
        write!(f, "{}", facets.join(" "))
    }
}

/// Dense face table over `m` packed vertices: `table[c]` iff `c` is contained
/// in one of `facets`.
pub(crate) fn down_closure_dense(m: usize, facets: &[u64]) -> Vec<bool> {
    let mut table = vec![false; 1usize << m];
    for &f in facets {
        table[f as usize] = true;
    }
    for i in 0..m {
        let b = 1usize << i;
        for c in 0..table.len() {
            if c & b == 0 && table[c | b] {
                table[c] = true;
            }
        }
    }
    table
}

/// Faces of a dense table grouped by size, sorted by mask. Empty when the
/// table has no faces.
pub(crate) fn faces_from_table(m: usize, table: &[bool]) -> Vec<Vec<u64>> {
    let mut groups: Vec<Vec<u64>> = vec![Vec::new(); m + 1];
    for (c, &is_face) in table.iter().enumerate() {
        if is_face {
            groups[(c as u64).count_ones() as usize].push(c as u64);
        }
    }
    while groups.last().is_some_and(|g| g.is_empty()) {
        groups.pop();
    }
    groups
}

/// Reduced homology of the complex whose faces are listed by size
/// (`faces[s]` holds the faces with `s` vertices, sorted by mask).
///
/// Checks that consecutive boundary maps compose to zero, that every
/// dimension is nonnegative and that the alternating sum of the dimensions
/// equals the reduced Euler characteristic.
pub(crate) fn homology_of_faces(faces: &[Vec<u64>], f: FieldSpec) -> Result<HomologyProfile> {
    let top = faces.len();
    // ranks[s] = rank of the boundary map from size-s faces to size-(s-1) faces.
    let mut ranks = vec![0usize; top + 1];
    let mut lower: Option<SparseMatrix> = None;
    for s in 1..top {
        let d = boundary_matrix(&faces[s], &faces[s - 1]);
        if let Some(l) = &lower {
            check_composition_zero(l, &d)?;
        }
        ranks[s] = exact_rank(&d, f);
        lower = Some(d);
    }
    let mut dims = Vec::with_capacity(top);
    for s in 0..top {
        let d = faces[s].len() as i64 - ranks[s] as i64 - ranks[s + 1] as i64;
        if d < 0 {
            return Err(Error::Invariant(format!("negative homology dimension {d} in degree {}", s as i64 - 1)));
        }
        dims.push(d as usize);
    }
    let euler = alternating_sum(faces.iter().map(|g| g.len() as i64));
    let profile = HomologyProfile {
        dims,
        field_char: f.characteristic(),
    };
    if profile.euler_characteristic() != euler {
        return Err(Error::Invariant(format!(
            "Euler characteristic mismatch: faces give {euler}, homology gives {}",
            profile.euler_characteristic()
        )));
    }
    Ok(profile)
}

/// Sign of removing vertex `v` from face `face` under the sorted orientation.
#[inline]
fn sign(face: u64, v: usize) -> i64 {
    if (face & (bit(v) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Boundary matrix from `cols` (faces of size `s`) to `rows` (size `s - 1`).
pub(crate) fn boundary_matrix(cols: &[u64], rows: &[u64]) -> SparseMatrix {
    let mut m = SparseMatrix::new(rows.len());
    m.cols.reserve(cols.len());
    for &face in cols {
        let mut col: Vec<(u32, i64)> = Ones(face)
            .map(|v| {
                let r = rows
                    .binary_search(&(face & !bit(v)))
                    .expect("complex is closed under taking subsets");
                (r as u32, sign(face, v))
            })
            .collect();
        col.sort_unstable_by_key(|&(r, _)| r);
        m.cols.push(col);
    }
    m
}

/// Checks `lower · upper = 0` over the integers.
fn check_composition_zero(lower: &SparseMatrix, upper: &SparseMatrix) -> Result<()> {
    let mut acc: Vec<(u32, i64)> = Vec::new();
    for (j, col) in upper.cols.iter().enumerate() {
        acc.clear();
        for &(r, c) in col {
            acc.extend(lower.cols[r as usize].iter().map(|&(r2, c2)| (r2, c * c2)));
        }
        acc.sort_unstable_by_key(|&(r, _)| r);
        if acc.chunk_by(|a, b| a.0 == b.0).any(|ch| ch.iter().map(|&(_, c)| c).sum::<i64>() != 0) {
            return Err(Error::Invariant(format!("boundary squared is nonzero on column {j}")));
        }
    }
    Ok(())
}

/// Checks `∂_{s} ∘ ∂_{s+1} = 0` for every `s` by expanding each face's
/// double boundary over the integers.
pub fn check_boundary_squared_zero(d: &SimplicialComplex) -> Result<()> {
    let faces = d.faces_by_size();
    for group in faces.iter().skip(2) {
        for &face in group {
            let mut acc: Vec<(u64, i64)> = Vec::new();
            for v in Ones(face) {
                let g = face & !bit(v);
                for w in Ones(g) {
                    acc.push((g & !bit(w), sign(face, v) * sign(g, w)));
                }
            }
            acc.sort_unstable_by_key(|&(h, _)| h);
            for chunk in acc.chunk_by(|a, b| a.0 == b.0) {
                let total: i64 = chunk.iter().map(|&(_, c)| c).sum();
                if total != 0 {
                    return Err(Error::Invariant(format!("boundary squared is nonzero on face {face:#b}")));
                }
            }
        }
    }
    Ok(())
}

/// Facet complex `Δ(I)`: facets are the minimal generator supports.
pub fn facet_complex(i: &SqfIdeal) -> Result<SimplicialComplex> {
    if i.is_unit() {
        return Err(Error::invalid("the unit ideal has no facet complex"));
    }
    Ok(SimplicialComplex {
        vertices: i.support(),
        facets: i.masks().to_vec(),
    })
}

/// Stanley–Reisner complex of `i` on the variables `0..ambient`.
pub fn stanley_reisner_complex(i: &SqfIdeal, ambient: usize) -> Result<SimplicialComplex> {
    if i.is_unit() {
        return Err(Error::invalid("the unit ideal has no Stanley–Reisner complex"));
    }
    if ambient < i.ambient() && i.support() >> ambient != 0 {
        return Err(Error::invalid("ideal uses variables beyond the ambient ring"));
    }
    if ambient > MAX_DENSE_VERTICES {
        return Err(Error::CapExceeded {
            what: "Stanley–Reisner vertex count",
            cap: MAX_DENSE_VERTICES,
            got: ambient,
        });
    }
    let table = non_face_table(i.masks(), ambient);
    let full = crate::bits::low_mask(ambient);
    // Maximal faces: faces with no face one vertex larger.
    let facets = (0..=full)
        .filter(|&c| !table[c as usize] && Ones(full & !c).all(|v| table[(c | bit(v)) as usize]))
        .collect();
    SimplicialComplex::from_facets(full, facets)
}

/// `table[c]` iff the monomial with support `c` lies in the ideal generated by
/// `gens` (all within the low `m` bits).
pub(crate) fn non_face_table(gens: &[u64], m: usize) -> Vec<bool> {
    let mut table = vec![false; 1usize << m];
    for &g in gens {
        table[g as usize] = true;
    }
    for i in 0..m {
        let b = 1usize << i;
        for c in 0..table.len() {
            if c & b != 0 && table[c & !b] {
                table[c] = true;
            }
        }
    }
    table
}

/// Subcomplex generated by the facets of `d` contained in `u`, on `u`.
pub fn induced_subcomplex(d: &SimplicialComplex, u: u64) -> Result<SimplicialComplex> {
    if !is_subset(u, d.vertices) {
        return Err(Error::invalid("induced vertex set is not inside the complex's vertex set"));
    }
    Ok(SimplicialComplex {
        vertices: u,
        facets: d.facets.iter().copied().filter(|&f| is_subset(f, u)).collect(),
    })
}

/// Complement complex `Δ^c_U` with facets `U ∖ F`.
pub fn complement_complex(d: &SimplicialComplex, u: u64) -> Result<SimplicialComplex> {
    if d.facets.iter().any(|&f| !is_subset(f, u)) {
        return Err(Error::invalid("facet not contained in the complement set"));
    }
    SimplicialComplex::from_facets(u, d.facets.iter().map(|&f| u & !f).collect())
}

/// Reduced homology of `d` over `f`.
pub fn reduced_homology(d: &SimplicialComplex, f: FieldSpec) -> Result<HomologyProfile> {
    homology_of_faces(&d.faces_by_size(), f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::from_indices;
    use crate::graphs::{cycle, path};
    use crate::ideals::{edge_ideal, sqf_power};

    fn cx(vertices: &[usize], facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(
            from_indices(vertices.iter().copied()),
            facets.iter().map(|f| from_indices(f.iter().copied())).collect(),
        )
        .unwrap()
    }

    fn dims(d: &SimplicialComplex) -> Vec<usize> {
        reduced_homology(d, FieldSpec::default()).unwrap().dims
    }

    #[test]
    fn field_spec() {
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert_eq!(FieldSpec::new(0).unwrap(), FieldSpec::rationals());
        assert_eq!(FieldSpec::default().characteristic(), 32003);
        assert_eq!(FieldSpec::default().to_string(), "ZZ/32003");
    }

    #[test]
    fn basic_homology() {
        let circle = cx(&[0, 1, 2], &[&[0, 1], &[0, 2], &[1, 2]]);
        assert_eq!(dims(&circle), vec![0, 0, 1]);
        assert!(reduced_homology(&SimplicialComplex::simplex(0b1111), FieldSpec::rationals())
            .unwrap()
            .is_acyclic());
        let points = cx(&[0, 1], &[&[0], &[1]]);
        assert_eq!(reduced_homology(&points, FieldSpec::default()).unwrap().reduced(0), 1);
        assert!(dims(&SimplicialComplex::void(0b11)).is_empty());
        assert_eq!(dims(&SimplicialComplex::irrelevant(0b11)), vec![1]);
        // Two triangles glued along nothing: two circles.
        let two = cx(
            &[0, 1, 2, 3, 4, 5],
            &[&[0, 1], &[0, 2], &[1, 2], &[3, 4], &[3, 5], &[4, 5]],
        );
        assert_eq!(dims(&two), vec![0, 1, 2]);
    }

    #[test]
    fn projective_plane_depends_on_characteristic() {
        // Six-vertex triangulation of RP^2.
        let rp2 = cx(
            &[0, 1, 2, 3, 4, 5],
            &[
                &[0, 1, 2],
                &[0, 2, 3],
                &[0, 3, 4],
                &[0, 4, 5],
                &[0, 1, 5],
                &[1, 2, 4],
                &[2, 3, 5],
                &[1, 3, 4],
                &[1, 3, 5],
                &[2, 4, 5],
            ],
        );
        check_boundary_squared_zero(&rp2).unwrap();
        assert!(reduced_homology(&rp2, FieldSpec::rationals()).unwrap().is_acyclic());
        let f2 = reduced_homology(&rp2, FieldSpec::new(2).unwrap()).unwrap();
        assert_eq!((f2.reduced(1), f2.reduced(2)), (1, 1));
    }

    #[test]
    fn facet_complexes() {
        let d = facet_complex(&edge_ideal(&path(3).unwrap())).unwrap();
        assert_eq!(d.facets(), &[0b011, 0b110]);
        let d = facet_complex(&sqf_power(&cycle(13).unwrap(), 2)).unwrap();
        assert!(d.facets().iter().all(|f| f.count_ones() == 4));
        assert!(facet_complex(&SqfIdeal::zero(3).unwrap()).unwrap().is_void());
        assert!(facet_complex(&SqfIdeal::unit(3).unwrap()).is_err());
    }

    #[test]
    fn stanley_reisner() {
        // Independence complex of C_5: the five non-edges.
        let d = stanley_reisner_complex(&edge_ideal(&cycle(5).unwrap()), 5).unwrap();
        let mut expected: Vec<u64> = vec![];
        for u in 0..5 {
            for v in u + 1..5 {
                if (v - u) % 5 != 1 && (v - u) % 5 != 4 {
                    expected.push(bit(u) | bit(v));
                }
            }
        }
        expected.sort_unstable();
        let mut got = d.facets().to_vec();
        got.sort_unstable();
        assert_eq!(got, expected);
        let d = stanley_reisner_complex(&SqfIdeal::zero(4).unwrap(), 4).unwrap();
        assert_eq!(d, SimplicialComplex::simplex(0b1111));
        let xy = SqfIdeal::from_masks(2, vec![0b11]).unwrap();
        assert_eq!(stanley_reisner_complex(&xy, 2).unwrap(), cx(&[0, 1], &[&[0], &[1]]));
    }

    #[test]
    fn induced_and_complement() {
        let d = cx(&[0, 1, 2], &[&[0, 1], &[1, 2]]);
        assert_eq!(induced_subcomplex(&d, 0b111).unwrap(), d);
        assert!(induced_subcomplex(&d, 0).unwrap().is_void());
        assert!(induced_subcomplex(&d, 0b1000).is_err());
        assert_eq!(complement_complex(&d, 0b111).unwrap(), cx(&[0, 1, 2], &[&[0], &[2]]));
        let single = SimplicialComplex::simplex(0b111);
        assert!(complement_complex(&single, 0b111).unwrap().is_irrelevant());
        assert!(complement_complex(&d, 0b011).is_err());

        // I(C_13)^[2] has no 2-matching on {1,2,3,6,9,12}.
        let dc = facet_complex(&sqf_power(&cycle(13).unwrap(), 2)).unwrap();
        let u = from_indices([0, 1, 2, 5, 8, 11]);
        assert!(induced_subcomplex(&dc, u).unwrap().is_void());
        // Its complement on all 13 vertices contains {5,7,8,10,11,13} since {1,2,3,4} is a facet.
        let full = complement_complex(&dc, crate::bits::low_mask(13)).unwrap();
        assert!(full.contains_face(from_indices([4, 6, 7, 9, 10, 12])));
    }

    #[test]
    fn json_round_trip() {
        let d = cx(&[0, 1, 2], &[&[0, 1], &[1, 2]]);
        assert_eq!(d.to_json(), r#"{"vertices":[0,1,2],"facets":[[0,1],[1,2]]}"#);
        assert_eq!(serde_json::from_str::<SimplicialComplex>(&d.to_json()).unwrap(), d);
    }

    #[test]
    fn sparse_closure_path() {
        // 26 vertices in the facets forces the hash-set closure.
        let small = [0b0111u64, 0b1010, 0b1100];
        let mut facets: Vec<u64> = small.iter().map(|f| f << 22).collect();
        facets.extend((0..22).map(bit));
        let wide = SimplicialComplex::from_facets(crate::bits::low_mask(26), facets).unwrap();
        let h = reduced_homology(&wide, FieldSpec::default()).unwrap();
        // 23 components and one independent cycle.
        assert_eq!((h.reduced(0), h.reduced(1)), (22, 1));
        let dense = SimplicialComplex::from_facets(0b1111, small.to_vec()).unwrap();
        assert_eq!(dims(&dense), vec![0, 0, 1, 0]);
    }
}
