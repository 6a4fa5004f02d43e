//! Square-free monomial ideals, edge ideals and their square-free powers.
//!
//! A square-free monomial is its support, a `u64` mask over at most 64
//! variables. An ideal is stored by its minimal generating set, sorted by
//! `(degree, mask)`. The zero ideal has no generators; the unit ideal has the
//! single generator with empty support.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::{bit, indices, is_subset, low_mask, Ones};
use crate::error::{Error, Result};
use crate::graphs::{matching_number, Graph};

pub const MAX_VARIABLES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SqfMonomial {
    pub support: u64,
    pub ambient: usize,
}

impl SqfMonomial {
    pub fn new(ambient: usize, vars: &[usize]) -> Result<Self> {
        check_ambient(ambient)?;
        let mut support = 0;
        for &v in vars {
            if v >= ambient {
                return Err(Error::invalid(format!("variable {v} outside ambient {ambient}")));
            }
            support |= bit(v);
        }
        Ok(SqfMonomial { support, ambient })
    }

    pub fn from_mask(ambient: usize, support: u64) -> Result<Self> {
        check_ambient(ambient)?;
        if !is_subset(support, low_mask(ambient)) {
            return Err(Error::invalid("support outside the ambient ring"));
        }
        Ok(SqfMonomial { support, ambient })
    }

    pub fn degree(&self) -> usize {
        self.support.count_ones() as usize
    }

    pub fn vars(&self) -> Vec<usize> {
        indices(self.support)
    }
}

fn check_ambient(n: usize) -> Result<()> {
    if n > MAX_VARIABLES {
        Err(Error::CapExceeded {
            what: "variable count",
            cap: MAX_VARIABLES,
            got: n,
        })
    } else {
        Ok(())
    }
}

#[inline]
fn canonical_key(m: &u64) -> (u32, u64) {
    (m.count_ones(), *m)
}

/// Square-free monomial ideal in `K[x_0, ..., x_{n-1}]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IdealJson", into = "IdealJson")]
pub struct SqfIdeal {
    ambient: usize,
    gens: Vec<u64>,
}

/// Wire form: `{"ambient": n, "gens": [[i, j, ...], ...]}` with sorted indices.
#[derive(Serialize, Deserialize)]
struct IdealJson {
    ambient: usize,
    gens: Vec<Vec<usize>>,
}

impl From<SqfIdeal> for IdealJson {
    fn from(i: SqfIdeal) -> Self {
        IdealJson {
            ambient: i.ambient,
            gens: i.gens.iter().map(|&g| indices(g)).collect(),
        }
    }
}

impl TryFrom<IdealJson> for SqfIdeal {
    type Error = Error;

    fn try_from(j: IdealJson) -> Result<Self> {
        let gens = j
            .gens
            .iter()
            .map(|vs| SqfMonomial::new(j.ambient, vs))
            .collect::<Result<Vec<_>>>()?;
        SqfIdeal::from_generators(j.ambient, gens)
    }
}

impl SqfIdeal {
    pub fn zero(ambient: usize) -> Result<Self> {
        check_ambient(ambient)?;
        Ok(SqfIdeal { ambient, gens: vec![] })
    }

    pub fn unit(ambient: usize) -> Result<Self> {
        check_ambient(ambient)?;
        Ok(SqfIdeal {
            ambient,
            gens: vec![0],
        })
    }

    /// Ideal generated by the variables in `mask`.
    pub fn variables(ambient: usize, mask: u64) -> Result<Self> {
        Self::from_masks(ambient, Ones(mask).map(bit).collect())
    }

    /// Minimalizes the given generators.
    pub fn from_generators(ambient: usize, gens: Vec<SqfMonomial>) -> Result<Self> {
        check_ambient(ambient)?;
        if gens.iter().any(|g| g.ambient != ambient) {
            return Err(Error::invalid("generators live in different ambient rings"));
        }
        Self::from_masks(ambient, gens.into_iter().map(|g| g.support).collect())
    }

    /// Minimalizes the given supports.
    pub fn from_masks(ambient: usize, mut gens: Vec<u64>) -> Result<Self> {
        check_ambient(ambient)?;
        if gens.iter().any(|&g| !is_subset(g, low_mask(ambient))) {
            return Err(Error::invalid("support outside the ambient ring"));
        }
        gens.sort_unstable_by_key(canonical_key);
        gens.dedup();
        let mut kept: Vec<u64> = Vec::with_capacity(gens.len());
        for g in gens {
            // Sorted by degree, so only earlier generators can divide g.
            if !kept.iter().any(|&h| is_subset(h, g)) {
                kept.push(g);
            }
        }
        Ok(SqfIdeal { ambient, gens: kept })
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Minimal generator supports in canonical order.
    #[inline]
    pub fn masks(&self) -> &[u64] {
        &self.gens
    }

    pub fn generators(&self) -> Vec<SqfMonomial> {
        self.gens
            .iter()
            .map(|&support| SqfMonomial {
                support,
                ambient: self.ambient,
            })
            .collect()
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first() == Some(&0)
    }

    /// Union of all generator supports.
    pub fn support(&self) -> u64 {
        self.gens.iter().fold(0, |a, &g| a | g)
    }

    /// Common degree of all generators, if they share one.
    pub fn equigenerated_degree(&self) -> Option<usize> {
        let first = self.gens.first()?.count_ones();
        self.gens
            .iter()
            .all(|g| g.count_ones() == first)
            .then_some(first as usize)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.gens.first().map(|g| g.count_ones() as usize)
    }

    /// Whether the monomial with support `mask` lies in the ideal.
    pub fn contains_mask(&self, mask: u64) -> bool {
        self.gens.iter().any(|&g| is_subset(g, mask))
    }

    fn same_ring(&self, other: &SqfIdeal) -> Result<()> {
        if self.ambient != other.ambient {
            Err(Error::invalid(format!(
                "ambient mismatch: {} vs {}",
                self.ambient, other.ambient
            )))
        } else {
            Ok(())
        }
    }

    /// `I + J`.
    pub fn add(&self, other: &SqfIdeal) -> Result<SqfIdeal> {
        self.same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        Self::from_masks(self.ambient, gens)
    }

    /// `(I : m)`: generator supports with `supp(m)` removed, minimalized.
    pub fn colon(&self, m: &SqfMonomial) -> Result<SqfIdeal> {
        if m.ambient != self.ambient {
            return Err(Error::invalid("colon by a monomial from another ring"));
        }
        Self::from_masks(self.ambient, self.gens.iter().map(|&g| g & !m.support).collect())
    }

    pub fn colon_mask(&self, mask: u64) -> Result<SqfIdeal> {
        self.colon(&SqfMonomial::from_mask(self.ambient, mask)?)
    }

    /// `m · I`.
    pub fn multiply(&self, m: &SqfMonomial) -> Result<SqfIdeal> {
        if m.ambient != self.ambient {
            return Err(Error::invalid("product with a monomial from another ring"));
        }
        // Products of square-free monomials may fail to be square-free; only the
        // square-free case (disjoint supports) is representable.
        if self.gens.iter().any(|&g| g & m.support != 0) {
            return Err(Error::invalid("product is not square-free"));
        }
        Self::from_masks(self.ambient, self.gens.iter().map(|&g| g | m.support).collect())
    }

    /// Equality of minimal generating sets.
    pub fn equals(&self, other: &SqfIdeal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.gens == other.gens)
    }

    /// Same ideal in `ambient` variables with every variable index shifted by `shift`.
    pub fn embed(&self, ambient: usize, shift: usize) -> Result<SqfIdeal> {
        if self.ambient + shift > ambient {
            return Err(Error::invalid("embedding does not fit"));
        }
        Self::from_masks(ambient, self.gens.iter().map(|&g| g << shift).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ideal serializes")
    }
}

impl fmt::Display for SqfIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "<0>");
        }
        let gens: Vec<String> = self
            .gens
            .iter()
            .map(|&g| {
                if g == 0 {
                    "1".to_string()
                } else {
                    Ones(g).map(|v| format!("x{}", v + 1)).collect::<Vec<_>>().join("")
                }
            })
            .collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// Edge ideal `I(G)`.
pub fn edge_ideal(g: &Graph) -> SqfIdeal {
    let gens = g.edges().into_iter().map(|(u, v)| bit(u) | bit(v)).collect();
    SqfIdeal::from_masks(g.n(), gens).expect("graph fits the variable cap")
}

/// Square-free power `I(G)^[k]`, generated by the vertex sets of k-matchings.
pub fn sqf_power(g: &Graph, k: usize) -> SqfIdeal {
    if k == 0 {
        return SqfIdeal::unit(g.n()).expect("graph fits the variable cap");
    }
    let supports = crate::graphs::matching::k_matching_supports(g, k);
    SqfIdeal::from_masks(g.n(), supports).expect("graph fits the variable cap")
}

/// `minimalize`: the ideal with the given generators.
pub fn minimalize(ambient: usize, gens: Vec<SqfMonomial>) -> Result<SqfIdeal> {
    SqfIdeal::from_generators(ambient, gens)
}

fn check_edge_power(g: &Graph, k: usize, min_k: usize) -> Result<()> {
    let nu = matching_number(g);
    if k < min_k || k > nu {
        return Err(Error::invalid(format!("k = {k} outside {min_k}..={nu}")));
    }
    Ok(())
}

/// Both sides of `(I(G)^[k] : xy) = Σ_i I(G_i)^[k-1]`, where `G_i` is
/// `G \ {x, y}` plus the edges `u_i v_j` joining the other neighbours `u_i`
/// of `x` to the other neighbours `v_j` of `y`.
///
/// When `x` or `y` has no other neighbour the right side is
/// `I(G \ {x, y})^[k-1]`.
pub fn colon_identity_edge(g: &Graph, k: usize, x: usize, y: usize) -> Result<(SqfIdeal, SqfIdeal)> {
    if !g.has_edge(x, y) {
        return Err(Error::invalid(format!("{{{x}, {y}}} is not an edge")));
    }
    check_edge_power(g, k, 2)?;
    let left = sqf_power(g, k).colon_mask(bit(x) | bit(y))?;
    let base = g.isolate(bit(x) | bit(y));
    let us: Vec<usize> = Ones(g.neighbors(x) & !bit(y)).collect();
    let vs: Vec<usize> = Ones(g.neighbors(y) & !bit(x)).collect();
    let mut right = SqfIdeal::zero(g.n())?;
    if us.is_empty() || vs.is_empty() {
        right = sqf_power(&base, k - 1);
    } else {
        for &u in &us {
            let mut gi = base.clone();
            for &v in &vs {
                if u != v {
                    gi.add_edge(u, v)?;
                }
            }
            right = right.add(&sqf_power(&gi, k - 1))?;
        }
    }
    Ok((left, right))
}

/// Both sides of the second-power form `(I(G)^[2] : xy) = I(G')`, where `G'`
/// is `G \ {x, y}` plus every edge `ab` with `a ∈ N(x)`, `b ∈ N(y)`,
/// `a ≠ b`, `a, b ∉ {x, y}`.
pub fn colon_identity_second_power(g: &Graph, x: usize, y: usize) -> Result<(SqfIdeal, SqfIdeal)> {
    if !g.has_edge(x, y) {
        return Err(Error::invalid(format!("{{{x}, {y}}} is not an edge")));
    }
    check_edge_power(g, 2, 2)?;
    let left = sqf_power(g, 2).colon_mask(bit(x) | bit(y))?;
    let xy = bit(x) | bit(y);
    let mut gp = g.isolate(xy);
    for a in Ones(g.neighbors(x) & !xy) {
        for b in Ones(g.neighbors(y) & !xy) {
            if a != b {
                gp.add_edge(a, b)?;
            }
        }
    }
    Ok((left, edge_ideal(&gp)))
}

/// Both sides of
/// `(I(G)^[k] : x) = Σ_{y ∈ N(x)} y·I(G \ {x, y})^[k-1] + I(G \ N[x])^[k]`.
pub fn colon_identity_vertex(g: &Graph, k: usize, x: usize) -> Result<(SqfIdeal, SqfIdeal)> {
    if x >= g.n() {
        return Err(Error::invalid(format!("unknown vertex {x}")));
    }
    check_edge_power(g, k, 2)?;
    let n = g.n();
    let left = sqf_power(g, k).colon_mask(bit(x))?;
    let mut right = sqf_power(&g.isolate(g.closed_neighbors(x)), k);
    for y in Ones(g.neighbors(x)) {
        let part = sqf_power(&g.isolate(bit(x) | bit(y)), k - 1);
        right = right.add(&part.multiply(&SqfMonomial::from_mask(n, bit(y))?)?)?;
    }
    Ok((left, right))
}

/// Both sides of
/// `((I(G)^[k] + <x y_1, ..., x y_d>) : x) = I(G \ {x, y_1..y_d})^[k] + <y_1, ..., y_d>`
/// where `N(x) = {y_1, ..., y_d}`.
pub fn colon_identity_star(g: &Graph, k: usize, x: usize) -> Result<(SqfIdeal, SqfIdeal)> {
    if x >= g.n() {
        return Err(Error::invalid(format!("unknown vertex {x}")));
    }
    check_edge_power(g, k, 1)?;
    let n = g.n();
    let nb = g.neighbors(x);
    let star = SqfIdeal::from_masks(n, Ones(nb).map(|y| bit(x) | bit(y)).collect())?;
    let left = sqf_power(g, k).add(&star)?.colon_mask(bit(x))?;
    let right = sqf_power(&g.isolate(g.closed_neighbors(x)), k).add(&SqfIdeal::variables(n, nb)?)?;
    Ok((left, right))
}

/// Both sides of `I(G)^[k] + <x> = I(G \ x)^[k] + <x>`.
pub fn deletion_identity(g: &Graph, k: usize, x: usize) -> Result<(SqfIdeal, SqfIdeal)> {
    if x >= g.n() {
        return Err(Error::invalid(format!("unknown vertex {x}")));
    }
    let vx = SqfIdeal::variables(g.n(), bit(x))?;
    let left = sqf_power(g, k).add(&vx)?;
    let right = sqf_power(&g.isolate(bit(x)), k).add(&vx)?;
    Ok((left, right))
}

/// Both sides of `((I + <x_1..x_{r-1}>) : x_r) = (I : x_r) + <x_1..x_{r-1}>`
/// for the variables `vars = [x_1, ..., x_r]`.
pub fn colon_exchange_identity(i: &SqfIdeal, vars: &[usize]) -> Result<(SqfIdeal, SqfIdeal)> {
    let (&last, rest) = vars
        .split_last()
        .ok_or_else(|| Error::invalid("need at least one variable"))?;
    let n = i.ambient();
    let others = SqfIdeal::variables(n, crate::bits::from_indices(rest.iter().copied()))?;
    let xr = SqfMonomial::new(n, &[last])?;
    let left = i.add(&others)?.colon(&xr)?;
    let right = i.colon(&xr)?.add(&others)?;
    Ok((left, right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{cycle, path, Graph};

    fn ideal(n: usize, gens: &[&[usize]]) -> SqfIdeal {
        SqfIdeal::from_generators(n, gens.iter().map(|g| SqfMonomial::new(n, g).unwrap()).collect()).unwrap()
    }

    #[test]
    fn edge_ideals() {
        assert_eq!(edge_ideal(&path(3).unwrap()), ideal(3, &[&[0, 1], &[1, 2]]));
        assert_eq!(edge_ideal(&cycle(3).unwrap()).num_generators(), 3);
        assert!(edge_ideal(&Graph::edgeless(4).unwrap()).is_zero());
    }

    #[test]
    fn square_free_powers() {
        assert_eq!(sqf_power(&path(4).unwrap(), 2), ideal(4, &[&[0, 1, 2, 3]]));
        assert!(sqf_power(&cycle(5).unwrap(), 3).is_zero());
        let c6 = cycle(6).unwrap();
        assert_eq!(sqf_power(&c6, 1), edge_ideal(&c6));
        assert!(sqf_power(&c6, 0).is_unit());
        assert!(!sqf_power(&c6, 0).is_zero());
        assert!(sqf_power(&cycle(4).unwrap(), 2).equals(&sqf_power(&cycle(4).unwrap(), 2)).unwrap());
    }

    #[test]
    fn minimalize_cases() {
        let xy = SqfMonomial::new(3, &[0, 1]).unwrap();
        let xyz = SqfMonomial::new(3, &[0, 1, 2]).unwrap();
        let yz = SqfMonomial::new(3, &[1, 2]).unwrap();
        assert_eq!(minimalize(3, vec![xy, xyz]).unwrap(), ideal(3, &[&[0, 1]]));
        assert!(minimalize(3, vec![]).unwrap().is_zero());
        assert_eq!(minimalize(3, vec![xy, yz, xy]).unwrap().num_generators(), 2);
        let other = SqfMonomial::new(4, &[0]).unwrap();
        assert!(minimalize(3, vec![xy, other]).is_err());
    }

    #[test]
    fn colon_cases() {
        let i = ideal(4, &[&[0, 1, 2, 3]]);
        let m = SqfMonomial::new(4, &[1, 2]).unwrap();
        assert_eq!(i.colon(&m).unwrap(), ideal(4, &[&[0, 3]]));
        let j = ideal(5, &[&[0, 1], &[1, 2]]);
        assert_eq!(j.colon_mask(bit(4)).unwrap(), j);
        assert!(SqfIdeal::zero(4).unwrap().colon(&m).unwrap().is_zero());
        // Colon by a generator gives the unit ideal.
        assert!(j.colon_mask(0b011).unwrap().is_unit());
    }

    #[test]
    fn sums() {
        let xy = ideal(3, &[&[0, 1]]);
        let x = ideal(3, &[&[0]]);
        assert_eq!(xy.add(&x).unwrap(), x);
        assert_eq!(xy.add(&SqfIdeal::zero(3).unwrap()).unwrap(), xy);
        let yz = ideal(3, &[&[1, 2]]);
        assert_eq!(xy.add(&yz).unwrap(), ideal(3, &[&[0, 1], &[1, 2]]));
        assert!(xy.add(&SqfIdeal::zero(4).unwrap()).is_err());
        assert!(!ideal(3, &[&[0, 1], &[1, 2]]).equals(&xy).unwrap());
    }

    #[test]
    fn json_form() {
        let i = sqf_power(&path(4).unwrap(), 1);
        assert_eq!(i.to_json(), r#"{"ambient":4,"gens":[[0,1],[1,2],[2,3]]}"#);
        let back: SqfIdeal = serde_json::from_str(&i.to_json()).unwrap();
        assert_eq!(back, i);
        assert!(serde_json::from_str::<SqfIdeal>(r#"{"ambient":2,"gens":[[0,5]]}"#).is_err());
    }

    #[test]
    fn edge_colon_examples() {
        let (l, r) = colon_identity_edge(&path(4).unwrap(), 2, 1, 2).unwrap();
        assert_eq!(l, ideal(4, &[&[0, 3]]));
        assert_eq!(r, l);
        assert!(colon_identity_edge(&path(4).unwrap(), 2, 0, 2).is_err());

        // Colon of a cycle power by x1x2 is the power of the cycle on x3..xn.
        for n in 5..10 {
            let c = cycle(n).unwrap();
            for k in 2..=n / 2 {
                let (l, r) = colon_identity_edge(&c, k, 0, 1).unwrap();
                assert_eq!(l, r);
                let mut c_small = c.isolate(0b11);
                c_small.add_edge(2, n - 1).unwrap();
                assert_eq!(r, sqf_power(&c_small, k - 1), "n={n} k={k}");
            }
        }
        // k = 2 agrees with the single-graph form.
        let c = cycle(7).unwrap();
        let (l2, r2) = colon_identity_second_power(&c, 0, 1).unwrap();
        let (l, r) = colon_identity_edge(&c, 2, 0, 1).unwrap();
        assert_eq!((l2, r2), (l, r));
    }

    #[test]
    fn vertex_and_star_examples() {
        let (l, r) = colon_identity_vertex(&path(5).unwrap(), 2, 2).unwrap();
        assert_eq!(l, r);
        let (l, r) = colon_identity_vertex(&cycle(5).unwrap(), 2, 0).unwrap();
        assert_eq!(l, r);
        let (l, r) = colon_identity_star(&path(5).unwrap(), 2, 2).unwrap();
        assert_eq!(l, r);

        // Isolated vertex: nothing changes.
        let mut g = path(5).unwrap().isolate(bit(4));
        g.add_edge(0, 1).unwrap();
        let (l, r) = colon_identity_vertex(&g, 2, 4).unwrap();
        assert_eq!(l, sqf_power(&g, 2));
        assert_eq!(l, r);

        // P_n at x_{n-1}: I(P_{n-3})^[k] + <x_{n-2}, x_n>.
        for n in 5..10 {
            let p = path(n).unwrap();
            for k in 1..=(n - 3) / 2 {
                let (l, r) = colon_identity_star(&p, k, n - 2).unwrap();
                assert_eq!(l, r);
                let expected = sqf_power(&path(n - 3).unwrap(), k)
                    .embed(n, 0)
                    .unwrap()
                    .add(&SqfIdeal::variables(n, bit(n - 3) | bit(n - 1)).unwrap())
                    .unwrap();
                assert_eq!(r, expected, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn exchange_and_deletion() {
        let i = sqf_power(&cycle(7).unwrap(), 2);
        let (l, r) = colon_exchange_identity(&i, &[0, 3, 5]).unwrap();
        assert_eq!(l, r);
        let (l, r) = deletion_identity(&cycle(7).unwrap(), 2, 3).unwrap();
        assert_eq!(l, r);
    }
}
