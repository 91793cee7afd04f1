//! Cross-checks against independent reference computations.

mod common;

use fracbound_core::counting::{self, Graph};
use fracbound_core::detineq::PosDefMatrix;
use fracbound_core::entropy::{self, JointDistribution};
use fracbound_core::hypergraph::Hypergraph;
use fracbound_core::lp;
use fracbound_core::random;
use fracbound_core::rational::{integer, ratio};
use fracbound_core::relent::{self, MeasurePair, ProductMeasure};
use fracbound_core::Subset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn entropies_match_direct_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let sizes = random::alphabet_sizes(n, 3, &mut rng);
        let p = random::distribution(&sizes, 5, &mut rng).unwrap();
        for s in Subset::all(n) {
            assert!((p.entropy(s) - common::brute_entropy(&p, s)).abs() < 1e-12);
        }
        let tc = common::brute_total_correlation(&p);
        let via_kl = relent::kl_divergence(&p, &p.product_of_marginals().unwrap()).unwrap();
        assert!((tc - via_kl).abs() < 1e-9);
    }
}

#[test]
fn lp_matches_vertex_enumeration() {
    let c5 = Hypergraph::from_one_based(5, &[vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![5, 1]]).unwrap();
    assert_eq!(common::covering_by_vertex_enumeration(5, c5.edges()), ratio(5, 2));
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut checked = 0;
    while checked < 40 {
        let n = rng.gen_range(1..=5);
        let m = rng.gen_range(1..=5);
        let edges: Vec<Subset> = (0..m).map(|_| Subset::from_bits(rng.gen_range(1..1u64 << n))).collect();
        let h = Hypergraph::new(n, edges).unwrap();
        if h.require_full_coverage().is_err() {
            continue;
        }
        let (_, opt) = lp::optimal_fractional_covering(&h, &vec![integer(1); m]).unwrap();
        assert_eq!(opt, common::covering_by_vertex_enumeration(n, h.edges()), "{h:?}");
        checked += 1;
    }
}

#[test]
fn minors_match_leibniz() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let n = rng.gen_range(1..=5);
        let k = random::pd_matrix(n, &mut rng).unwrap();
        let rows = k.rows();
        for s in Subset::all(n).filter(|s| !s.is_empty()) {
            let direct = common::leibniz_det(&common::submatrix(&rows, s));
            assert!((k.principal_minor(s) - direct).abs() <= 1e-9 * direct.abs().max(1.0));
        }
    }
    let k = PosDefMatrix::new(vec![vec![2.0, 1.0, 0.0], vec![1.0, 2.0, 1.0], vec![0.0, 1.0, 2.0]]).unwrap();
    assert!((k.principal_minor(Subset::full(3)) - 4.0).abs() < 1e-12);
}

#[test]
fn homomorphisms_match_brute_force() {
    let targets = [
        Graph::independent_set_gadget(),
        Graph::complete(2).unwrap(),
        Graph::complete(3).unwrap(),
        Graph::complete(4).unwrap(),
        Graph::cycle(5).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..40 {
        let n = rng.gen_range(1..=6);
        let g = random::erdos_renyi(n, rng.gen_range(0.1..0.9), &mut rng).unwrap();
        for f in &targets {
            assert_eq!(counting::hom_count_exact(&g, f).unwrap(), common::brute_homs(&g, f));
        }
        assert_eq!(counting::independent_sets_exact(&g).unwrap(), common::brute_independent_sets(&g));
    }
}

#[test]
fn cycle_colourings_match_chromatic_polynomial() {
    for n in 3..=8 {
        let c = Graph::cycle(n).unwrap();
        for r in 2..=5 {
            let exact = counting::hom_count_exact(&c, &Graph::complete(r).unwrap()).unwrap();
            assert_eq!(exact as i128, common::cycle_chromatic(n as u32, r as i128));
            assert!(counting::coloring_bound(&c, r).unwrap().dominates(exact, 1e-9));
        }
    }
}

#[test]
fn bipartite_counts_match_explicit_graphs() {
    let targets = [
        Graph::independent_set_gadget(),
        Graph::complete(2).unwrap(),
        Graph::complete(3).unwrap(),
        Graph::complete(4).unwrap(),
        Graph::cycle(5).unwrap(),
    ];
    for a in 0..=4 {
        for b in 0..=4 {
            if a + b == 0 {
                continue;
            }
            let kab = Graph::complete_bipartite(a, b).unwrap();
            for f in &targets {
                let fast = counting::hom_complete_bipartite(a, b, f).unwrap();
                assert_eq!(fast, counting::hom_count_exact(&kab, f).unwrap().into(), "K_{a},{b}");
            }
        }
    }
}

#[test]
fn divergence_routes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..50 {
        let n = rng.gen_range(1..=4);
        let sizes = random::alphabet_sizes(n, 3, &mut rng);
        let p = random::distribution(&sizes, 5, &mut rng).unwrap();
        let q = random::product_measure(&sizes, 5, &mut rng).unwrap();
        let pair = MeasurePair::new(p.clone(), q.clone()).unwrap();
        let full = pair.relative_entropy(Subset::full(n));
        assert!((full - relent::kl_divergence(&p, &q.to_distribution().unwrap()).unwrap()).abs() < 1e-12);
        for s in Subset::all(n) {
            for t in Subset::all(n).filter(|t| t.is_disjoint(s)) {
                let diff = pair.conditional_relative_entropy(s, t).unwrap();
                let avg = pair.averaged_conditional_divergence(s, t).unwrap();
                assert!((diff - avg).abs() < 1e-9, "{s} | {t}: {diff} vs {avg}");
            }
        }
    }
}

#[test]
fn tensorization_against_pointwise_sum() {
    // Ent over a frozen coordinate computed by hand on {0,1}^2 with singletons
    let q = ProductMeasure::new(vec![vec![ratio(1, 3), ratio(2, 3)], vec![ratio(1, 2), ratio(1, 2)]]).unwrap();
    let g = [1.0, 2.0, 4.0, 3.0];
    let gr: Vec<_> = [1, 2, 4, 3].iter().map(|&v| integer(v)).collect();
    let q1 = [1.0 / 3.0, 2.0 / 3.0];
    let q2 = [0.5, 0.5];
    let ent = |w: &[f64], v: &[f64]| {
        let m: f64 = w.iter().zip(v).map(|(a, b)| a * b).sum();
        w.iter().zip(v).map(|(a, b)| a * b * b.ln()).sum::<f64>() - m * m.ln()
    };
    let joint_w: Vec<f64> = (0..4).map(|k| q1[k / 2] * q2[k % 2]).collect();
    let lhs = ent(&joint_w, &g);
    // freeze x2, vary x1; then freeze x1, vary x2
    let over_1: f64 = (0..2).map(|x2| q2[x2] * ent(&q1, &[g[x2], g[2 + x2]])).sum();
    let over_2: f64 = (0..2).map(|x1| q1[x1] * ent(&q2, &[g[2 * x1], g[2 * x1 + 1]])).sum();
    let h = Hypergraph::from_one_based(2, &[vec![1], vec![2]]).unwrap();
    let t = relent::tensorization_check(&q, &gr, &h).unwrap();
    assert!((t.lhs - lhs).abs() < 1e-12);
    assert!((t.rhs - (over_1 + over_2)).abs() < 1e-12);
}

#[test]
fn marginal_of_three_point_law() {
    let p = JointDistribution::uniform_on(vec![2, 2], vec![vec![0, 0], vec![0, 1], vec![1, 0]]).unwrap();
    assert_eq!(p.marginal(Subset::singleton(0)).probability(&[0]), ratio(2, 3));
    let h = entropy::erasure_entropy(&p);
    let direct = common::brute_entropy(&p, Subset::full(2)) * 2.0
        - common::brute_entropy(&p, Subset::singleton(0))
        - common::brute_entropy(&p, Subset::singleton(1));
    assert!((h - direct).abs() < 1e-12);
}
