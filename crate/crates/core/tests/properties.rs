use cospectral::canon::{automorphism_orbits, canonical_form, is_automorphism};
use cospectral::removal::{
    find_bijections, removal_cospectral, removal_cospectral_full, replaceable_vertices, verify_certificate,
};
use cospectral::spectrum::{char_poly, char_poly_oracle};
use cospectral::{Graph, VertexSet};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn graph_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn random_graph(rng: &mut StdRng, n: usize) -> Graph {
    let bits: Vec<bool> = (0..n * (n - 1) / 2).map(|_| rng.gen_bool(0.5)).collect();
    graph_from_bits(n, &bits)
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trip(g in graph_strategy(0, 62)) {
        let code = g.to_graph6().unwrap();
        prop_assert_eq!(Graph::from_graph6(&code).unwrap(), g);
    }

    #[test]
    fn degree_sum_is_twice_the_size(g in graph_strategy(0, 30)) {
        let total: usize = (0..g.order()).map(|v| g.degree(v)).sum();
        prop_assert_eq!(total, 2 * g.size());
    }

    #[test]
    fn deletions_commute(g in graph_strategy(3, 12), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let n = g.order();
        let (x, y) = (a.index(n), b.index(n));
        prop_assume!(x != y);
        let both = g.delete_vertices(&VertexSet::from([x, y])).unwrap();
        // removing x first shifts y down when y > x
        let y_after = if y > x { y - 1 } else { y };
        let seq = g.delete_vertices(&VertexSet::from([x])).unwrap()
            .delete_vertices(&VertexSet::from([y_after])).unwrap();
        prop_assert_eq!(both, seq);
    }

    #[test]
    fn char_poly_coefficient_invariants(g in graph_strategy(2, 20)) {
        let p = char_poly(&g);
        prop_assert_eq!(p.degree(), g.order());
        prop_assert_eq!(p.coeff(g.order()), BigInt::from(1));
        prop_assert_eq!(p.coeff(g.order() - 1), BigInt::from(0));
        prop_assert_eq!(p.coeff(g.order() - 2), -BigInt::from(g.size()));
    }

    #[test]
    fn char_poly_is_a_relabeling_invariant(g in graph_strategy(1, 16), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut StdRng::seed_from_u64(seed));
        prop_assert_eq!(char_poly(&g.permute(&perm)), char_poly(&g));
    }

    #[test]
    fn removal_cospectral_is_symmetric(g1 in graph_strategy(4, 8), g2 in graph_strategy(4, 8)) {
        for u in 0..g1.order() {
            for v in 0..g2.order() {
                for cert in replaceable_vertices(&g1, u, &g2, v).unwrap() {
                    let back = cert.reversed();
                    prop_assert!(verify_certificate(&g2, &g1, &back).unwrap());
                    let (s, t) = cert.removal_sets(&g1, &g2);
                    prop_assert!(removal_cospectral(&g2, &t, &g1, &s, back.map()).unwrap());
                }
            }
        }
    }

    #[test]
    fn godsil_criterion_matches_full_check(g1 in graph_strategy(4, 7), g2 in graph_strategy(4, 7), k in 1usize..=3) {
        let s = VertexSet::new(0..k);
        let t = VertexSet::new(g2.order() - k..g2.order());
        for f in cospectral::Bijection::all_between(&s, &t) {
            prop_assert_eq!(
                removal_cospectral(&g1, &s, &g2, &t, &f).unwrap(),
                removal_cospectral_full(&g1, &s, &g2, &t, &f).unwrap()
            );
        }
        let found = find_bijections(&g1, &s, &g2, &t).unwrap();
        for f in &found {
            prop_assert!(removal_cospectral_full(&g1, &s, &g2, &t, f).unwrap());
        }
    }
}

#[test]
fn char_poly_matches_oracle_on_every_graph_up_to_five_vertices() {
    let mut checked = 0;
    for n in 0..=5usize {
        let pairs = n * n.saturating_sub(1) / 2;
        for mask in 0u32..(1 << pairs) {
            let bits: Vec<bool> = (0..pairs).map(|i| mask >> i & 1 == 1).collect();
            let g = graph_from_bits(n, &bits);
            assert_eq!(char_poly(&g), char_poly_oracle(&g).unwrap(), "{}", g);
            checked += 1;
        }
    }
    assert_eq!(checked, 1 + 1 + 2 + 8 + 64 + 1024);
}

#[test]
fn char_poly_matches_oracle_on_random_graphs() {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let n = rng.gen_range(6..=8);
        let g = random_graph(&mut rng, n);
        assert_eq!(char_poly(&g), char_poly_oracle(&g).unwrap(), "{}", g);
    }
}

#[test]
fn canonical_form_ignores_relabeling() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=14);
        let g = random_graph(&mut rng, n);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let h = g.permute(&perm);
        let (cg, ch) = (canonical_form(&g), canonical_form(&h));
        assert_eq!(cg.canonical_graph6, ch.canonical_graph6, "{} vs {}", g, h);
        assert_eq!(g.permute(&cg.relabeling).to_graph6().unwrap(), cg.canonical_graph6);
    }
}

#[test]
fn orbits_match_brute_force_automorphisms() {
    let mut rng = StdRng::seed_from_u64(11);
    let mut graphs = vec![Graph::cycle(8), Graph::prism(), Graph::complete_bipartite(3, 3)];
    for _ in 0..60 {
        let n = rng.gen_range(2..=7);
        graphs.push(random_graph(&mut rng, n));
    }
    for g in graphs {
        let n = g.order();
        let autos: Vec<Vec<usize>> = all_permutations(n)
            .into_iter()
            .filter(|p| is_automorphism(&g, p))
            .collect();
        let orbits = automorphism_orbits(&g);
        for u in 0..n {
            for v in 0..n {
                let expected = autos.iter().any(|p| p[u] == v);
                assert_eq!(orbits.same_vertex_orbit(u, v), expected, "{} {} {}", g, u, v);
            }
        }
        let edges = g.edges();
        for &e in &edges {
            for &f in &edges {
                let expected = autos.iter().any(|p| {
                    let (a, b) = (p[e.lo()], p[e.hi()]);
                    (a.min(b), a.max(b)) == (f.lo(), f.hi())
                });
                assert_eq!(orbits.same_edge_orbit(e, f), expected, "{} {} {}", g, e, f);
            }
        }
    }
}
