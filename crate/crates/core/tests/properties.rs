//! Randomized properties checked against brute-force oracles written here.

use proptest::prelude::*;
use sqfpow::graphs::{enumerate_k_matchings, matching_number};
use sqfpow::homalg::{betti_facet_formula, betti_hochster, betti_taylor_oracle};
use sqfpow::ideals::{
    colon_exchange_identity, colon_identity_edge, colon_identity_second_power, colon_identity_star,
    colon_identity_vertex, deletion_identity, sqf_power,
};
use sqfpow::simplicial::{
    check_boundary_squared_zero, complement_complex, exact_rank, reduced_homology, stanley_reisner_complex,
    SparseMatrix,
};
use sqfpow::{FieldSpec, Graph, InvariantBundle, SimplicialComplex, SqfIdeal};

const P: u32 = 32003;

fn graph() -> impl Strategy<Value = Graph> {
    (2usize..=8).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn ideal() -> impl Strategy<Value = SqfIdeal> {
    (2usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(1u64..(1 << n), 1..=7).prop_map(move |masks| SqfIdeal::from_masks(n, masks).unwrap())
    })
}

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=7).prop_flat_map(|n| {
        let all = (1u64 << n) - 1;
        proptest::collection::vec(0u64..=all, 1..=6)
            .prop_map(move |facets| SimplicialComplex::from_facets(all, facets).unwrap())
    })
}

fn field() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![Just(FieldSpec::rationals()), Just(FieldSpec::new(2).unwrap()), Just(FieldSpec::new(P).unwrap())]
}

/// Every face of `d`, the empty face included, by brute force over subsets.
fn face_sizes(d: &SimplicialComplex) -> Vec<i64> {
    let v = d.vertices();
    let mut counts = vec![0i64; v.count_ones() as usize + 1];
    let mut s = v;
    loop {
        if d.facets().iter().any(|&f| s & !f == 0) {
            counts[s.count_ones() as usize] += 1;
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & v;
    }
    counts
}

/// Rank by Gaussian elimination over `Q` (i128 fractions) or `F_p`.
fn dense_rank(rows: &[Vec<i64>], p: u32) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let p = p as i128;
    if p > 0 {
        for r in a.iter_mut() {
            for x in r.iter_mut() {
                *x = x.rem_euclid(p);
            }
        }
    }
    let (m, n) = (a.len(), a.first().map_or(0, |r| r.len()));
    let mut rank = 0;
    for c in 0..n {
        let Some(piv) = (rank..m).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, piv);
        for r in 0..m {
            if r != rank && a[r][c] != 0 {
                let (top, here) = (a[rank][c], a[r][c]);
                for j in 0..n {
                    let v = a[r][j] * top - a[rank][j] * here;
                    a[r][j] = if p > 0 { v.rem_euclid(p) } else { v };
                }
                if p == 0 {
                    let g = a[r].iter().fold(0i128, |g, &x| gcd(g, x));
                    if g > 1 {
                        a[r].iter_mut().for_each(|x| *x /= g);
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Alexander dual: generated by the complements of the facets of the
/// Stanley–Reisner complex.
fn alexander_dual(i: &SqfIdeal) -> SqfIdeal {
    let n = i.ambient();
    let all = (1u64 << n) - 1;
    let d = stanley_reisner_complex(i, n).unwrap();
    SqfIdeal::from_masks(n, d.facets().iter().map(|&f| all & !f).collect()).unwrap()
}

fn bundle(i: &SqfIdeal, f: FieldSpec) -> InvariantBundle {
    InvariantBundle::compute(i, f).unwrap().0
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn betti_routes_agree(i in ideal(), f in field()) {
        let h = betti_hochster(&i, f).unwrap();
        prop_assert_eq!(&h, &betti_facet_formula(&i, f).unwrap());
        prop_assert_eq!(&h, &betti_taylor_oracle(&i, f).unwrap());
    }

    #[test]
    fn betti_table_shape(i in ideal()) {
        let t = betti_hochster(&i, FieldSpec::default()).unwrap();
        let gens = i.masks();
        for j in 0..=i.ambient() {
            let count = gens.iter().filter(|m| m.count_ones() as usize == j).count();
            prop_assert_eq!(t.get(0, j), count);
        }
        for s in 0..i.ambient() {
            prop_assert!(t.total(s) <= binomial(gens.len(), s + 1));
        }
        let b = bundle(&i, FieldSpec::default());
        prop_assert!(b.reg >= i.min_degree().unwrap());
        prop_assert!(b.depth_quotient <= b.krull_dim_quotient);
        prop_assert!(b.pd_quotient <= i.ambient());
    }

    #[test]
    fn alexander_duality(i in ideal(), f in field()) {
        prop_assume!(!i.is_unit() && !i.is_zero());
        let dual = alexander_dual(&i);
        prop_assume!(!dual.is_unit());
        let (bi, bd) = (bundle(&i, f), bundle(&dual, f));
        prop_assert_eq!(bi.reg, bd.pd_quotient);
        prop_assert_eq!(bi.linear_resolution, bd.is_cm);
    }

    #[test]
    fn disjoint_sums(a in ideal(), b in ideal()) {
        let n = a.ambient() + b.ambient();
        let (ea, eb) = (a.embed(n, 0).unwrap(), b.embed(n, a.ambient()).unwrap());
        let f = FieldSpec::default();
        let sum = bundle(&ea.add(&eb).unwrap(), f);
        let (ba, bb) = (bundle(&a, f), bundle(&b, f));
        prop_assert_eq!(sum.reg + 1, ba.reg + bb.reg);
        prop_assert_eq!(sum.depth_quotient, ba.depth_quotient + bb.depth_quotient);
    }

    #[test]
    fn boundary_squares_to_zero(d in complex()) {
        prop_assert!(check_boundary_squared_zero(&d).is_ok());
    }

    #[test]
    fn euler_characteristic(d in complex(), f in field()) {
        let h = reduced_homology(&d, f).unwrap();
        let faces: i64 = face_sizes(&d).iter().enumerate().map(|(t, &c)| if t % 2 == 0 { c } else { -c }).sum();
        prop_assert_eq!(h.euler_characteristic(), faces);
    }

    #[test]
    fn cones_are_acyclic(d in complex(), f in field()) {
        let apex = 1u64 << 7;
        let cone = SimplicialComplex::from_facets(
            d.vertices() | apex,
            d.facets().iter().map(|&g| g | apex).collect(),
        ).unwrap();
        prop_assert!(reduced_homology(&cone, f).unwrap().is_acyclic());
    }

    #[test]
    fn complement_is_an_involution(d in complex()) {
        let u = d.vertices();
        let twice = complement_complex(&complement_complex(&d, u).unwrap(), u).unwrap();
        prop_assert_eq!(twice, d);
    }

    #[test]
    fn rank_matches_gaussian_elimination(
        rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 6), 1..=6),
        f in field(),
    ) {
        let m = SparseMatrix::from_dense(&rows);
        prop_assert_eq!(exact_rank(&m, f), dense_rank(&rows, f.characteristic()));
    }

    #[test]
    fn square_free_power_generators(g in graph(), k in 1usize..=4) {
        let edges = g.edges();
        let mut supports = Vec::new();
        for set in 0u32..(1 << edges.len()) {
            if set.count_ones() as usize != k {
                continue;
            }
            let chosen: Vec<_> = (0..edges.len()).filter(|&e| set >> e & 1 == 1).map(|e| edges[e]).collect();
            let support = chosen.iter().fold(0u64, |s, &(u, v)| s | 1 << u | 1 << v);
            if support.count_ones() as usize == 2 * k {
                supports.push(support);
            }
        }
        supports.sort_unstable();
        supports.dedup();
        let mut got = sqf_power(&g, k).masks().to_vec();
        got.sort_unstable();
        prop_assert_eq!(&got, &supports);
        prop_assert_eq!(!supports.is_empty(), k <= matching_number(&g));
        prop_assert_eq!(!enumerate_k_matchings(&g, k).is_empty(), !supports.is_empty());
    }

    #[test]
    fn colon_and_deletion_identities(g in graph(), k in 1usize..=3, x in 0usize..8) {
        let x = x % g.n();
        let nu = matching_number(&g);
        prop_assume!(k <= nu);
        let (l, r) = deletion_identity(&g, k, x).unwrap();
        prop_assert_eq!(l, r);
        if k >= 2 {
            let (l, r) = colon_identity_vertex(&g, k, x).unwrap();
            prop_assert_eq!(l, r);
        }
        let (l, r) = colon_identity_star(&g, k, x).unwrap();
        prop_assert_eq!(l, r);
        for (u, v) in g.edges() {
            if k >= 2 {
                let (l, r) = colon_identity_edge(&g, k, u, v).unwrap();
                prop_assert_eq!(l, r);
            }
            if nu >= 2 {
                let (l, r) = colon_identity_second_power(&g, u, v).unwrap();
                prop_assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn colon_exchange(i in ideal(), vars in proptest::collection::vec(0usize..7, 1..=4)) {
        let mut distinct: Vec<usize> = Vec::new();
        for v in vars.into_iter().map(|v| v % i.ambient()) {
            if !distinct.contains(&v) {
                distinct.push(v);
            }
        }
        let vars = distinct;
        let (l, r) = colon_exchange_identity(&i, &vars).unwrap();
        prop_assert_eq!(l, r);
    }
}
