use cechlab::geometry::{sample_binomial, Density};
use cechlab::persistence::{
    betti, betti_oracle, bottleneck_distance, build_cech_filtration, compute_persistence,
    persistent_betti, persistent_betti_oracle, FieldSpec,
};
use cechlab::properties::{
    count_property, subset_count, PropertyDescriptor, SmallGraph, SubsetPropertyDescriptor,
};
use cechlab::{rng, PointCloud};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn fixed(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0xcec4),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn cloud(dim: usize, max: usize) -> impl Strategy<Value = PointCloud> {
    prop::collection::vec(prop::collection::vec(-1.0f64..1.0, dim), 0..=max)
        .prop_map(move |pts| PointCloud::from_points(dim, &pts).unwrap())
}

fn combinations(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, p, &mut Vec::new(), &mut out);
    out
}

fn properties(r: f64) -> Vec<PropertyDescriptor> {
    vec![
        PropertyDescriptor::iso_graph(SmallGraph::complete(2).unwrap(), r).unwrap(),
        PropertyDescriptor::iso_graph(SmallGraph::path(3).unwrap(), r).unwrap(),
        PropertyDescriptor::iso_graph(SmallGraph::complete(3).unwrap(), r).unwrap(),
        PropertyDescriptor::spread(r, 3).unwrap(),
        PropertyDescriptor::conn(r, 3).unwrap(),
        PropertyDescriptor::zeta(r, 3, 1.0, 1).unwrap(),
        PropertyDescriptor::zeta(r, 4, 1.2, 1).unwrap(),
    ]
}

proptest! {
    #![proptest_config(fixed(64))]

    #[test]
    fn translation_invariance(p in cloud(2, 9), shift in prop::collection::vec(-4.0f64..4.0, 2), r in 0.05f64..0.8) {
        // shifts by multiples of 1/8 keep coordinates exact
        let shift: Vec<f64> = shift.iter().map(|s| (s * 8.0).round() / 8.0).collect();
        let q = p.translated(&shift);
        let f = FieldSpec::default();
        for k in 0..2 {
            prop_assert_eq!(betti(&p, r, k, f).unwrap(), betti(&q, r, k, f).unwrap());
        }
        for g in properties(r) {
            prop_assert_eq!(count_property(&g, &p), count_property(&g, &q));
        }
    }

    #[test]
    fn scaling_invariance(p in cloud(2, 9), r in 0.05f64..0.8, e in -3i32..4) {
        let lambda = 2f64.powi(e);
        let q = p.scaled(lambda);
        let f = FieldSpec::default();
        for k in 0..2 {
            prop_assert_eq!(betti(&p, r, k, f).unwrap(), betti(&q, r * lambda, k, f).unwrap());
            prop_assert_eq!(
                persistent_betti(&p, r, 1.3, k, f).unwrap(),
                persistent_betti(&q, r * lambda, 1.3, k, f).unwrap()
            );
        }
        for g in properties(r) {
            let h = g.at_scale(r * lambda).unwrap();
            prop_assert_eq!(count_property(&g, &p), count_property(&h, &q));
        }
    }

    #[test]
    fn persistent_betti_monotone_in_theta(p in cloud(2, 10), r in 0.05f64..0.6, k in 0usize..2) {
        let f = FieldSpec::default();
        let mut last = betti(&p, r, k, f).unwrap();
        prop_assert_eq!(persistent_betti(&p, r, 1.0, k, f).unwrap(), last);
        for theta in [1.1, 1.3, 1.6, 2.0, 3.0] {
            let b = persistent_betti(&p, r, theta, k, f).unwrap();
            prop_assert!(b <= last);
            prop_assert!(b <= betti(&p, theta * r, k, f).unwrap());
            last = b;
        }
    }

    #[test]
    fn pruned_counts_match_brute_force(p in cloud(2, 12), r in 0.05f64..0.7) {
        for g in properties(r) {
            let brute = combinations(p.len(), g.arity())
                .into_iter()
                .filter(|idx| g.eval(&p.subset(idx)))
                .count() as u64;
            prop_assert_eq!(count_property(&g, &p), brute);
        }
        for h in [
            SubsetPropertyDescriptor::comp(r, 2).unwrap(),
            SubsetPropertyDescriptor::component(SmallGraph::complete(2).unwrap(), r).unwrap(),
            SubsetPropertyDescriptor::upsilon(r, 3, 1.0, 1).unwrap(),
        ] {
            let brute = combinations(p.len(), h.arity())
                .into_iter()
                .filter(|idx| h.eval(idx, &p))
                .count() as u64;
            prop_assert_eq!(subset_count(&h, &p), brute);
        }
    }

    #[test]
    fn matches_rank_oracle(p in cloud(3, 8), r in 0.05f64..0.9) {
        for k in 0..3 {
            let f = FieldSpec::default();
            prop_assert_eq!(betti(&p, r, k, f).unwrap(), betti_oracle(&p, r, k, f).unwrap());
        }
    }

    #[test]
    fn persistent_rank_matches_oracle(p in cloud(2, 9), r in 0.05f64..0.6, theta in 1.0f64..2.0, k in 0usize..2) {
        let f = FieldSpec::default();
        prop_assert_eq!(
            persistent_betti(&p, r, theta, k, f).unwrap(),
            persistent_betti_oracle(&p, r, theta, k, f).unwrap()
        );
    }
}

#[test]
fn locality_of_counts() {
    // a far-away copy adds exactly its own count
    let mut rng = rng::root(11);
    let unit = Density::unit_cube(2).unwrap();
    for _ in 0..20 {
        let a = sample_binomial(10, &unit, &mut rng).unwrap();
        let b = a.translated(&[100.0, 0.0]);
        let both = a.concat(&b).unwrap();
        for g in properties(0.3) {
            assert_eq!(count_property(&g, &both), 2 * count_property(&g, &a));
        }
    }
}

#[test]
fn field_choice_rarely_matters() {
    // Čech complexes of planar point sets have no torsion in practice; any
    // disagreement is reported rather than asserted.
    let mut rng = rng::root(12);
    let unit = Density::unit_cube(2).unwrap();
    let mut disagreements = 0;
    for _ in 0..100 {
        let p = sample_binomial(12, &unit, &mut rng).unwrap();
        let d2 = compute_persistence(
            &build_cech_filtration(&p, 0.6, 2).unwrap(),
            FieldSpec::new(2).unwrap(),
        );
        let d3 = compute_persistence(
            &build_cech_filtration(&p, 0.6, 2).unwrap(),
            FieldSpec::new(3).unwrap(),
        );
        if d2.intervals() != d3.intervals() {
            disagreements += 1;
        }
    }
    println!("field disagreements (Z/2 vs Z/3): {disagreements} of 100");
}

#[test]
fn bottleneck_stability_smoke() {
    let delta = 1e-3;
    let mut rng = rng::root(13);
    let unit = Density::unit_cube(2).unwrap();
    for _ in 0..20 {
        let p = sample_binomial(15, &unit, &mut rng).unwrap();
        let mut offsets = rng::stream(13, &[p.len() as u64]);
        let q = p.map_points(|x, out| {
            use rand::Rng;
            let angle: f64 = offsets.random::<f64>() * std::f64::consts::TAU;
            let len: f64 = delta * offsets.random::<f64>();
            out[0] = x[0] + len * angle.cos();
            out[1] = x[1] + len * angle.sin();
        });
        let f = FieldSpec::default();
        let dp = compute_persistence(&build_cech_filtration(&p, 2.0, 2).unwrap(), f);
        let dq = compute_persistence(&build_cech_filtration(&q, 2.0, 2).unwrap(), f);
        for k in 0..2 {
            let b = bottleneck_distance(&dp, &dq, k);
            assert!(b <= delta * (1.0 + 1e-9), "bottleneck {b} in dimension {k}");
        }
    }
}

#[test]
fn determinism() {
    let unit = Density::unit_cube(3).unwrap();
    let a = sample_binomial(50, &unit, &mut rng::root(5)).unwrap();
    let b = sample_binomial(50, &unit, &mut rng::root(5)).unwrap();
    assert_eq!(a, b);
    let f = FieldSpec::default();
    let da = compute_persistence(&build_cech_filtration(&a, 0.3, 2).unwrap(), f);
    let db = compute_persistence(&build_cech_filtration(&b, 0.3, 2).unwrap(), f);
    assert_eq!(da.to_csv(), db.to_csv());
}

#[test]
fn persistent_rank_sweep_against_oracle() {
    let mut rng = rng::root(14);
    let unit = Density::unit_cube(2).unwrap();
    let f = FieldSpec::default();
    let mut positive = 0;
    for i in 0..2000 {
        let p = sample_binomial(4 + i % 6, &unit, &mut rng).unwrap();
        // radii at and just above a cycle birth, where ranks are nonzero
        let diagram = compute_persistence(&build_cech_filtration(&p, p.diameter(), 2).unwrap(), f);
        let birth = diagram
            .in_dim(1)
            .map(|iv| iv.birth)
            .next()
            .unwrap_or(p.diameter() / 4.0);
        let r = birth * (1.0 + 0.01 * (i % 3) as f64);
        for theta in [1.05, 1.15, 1.3, 1.41] {
            let b = persistent_betti(&p, r, theta, 1, f).unwrap();
            assert_eq!(
                b,
                persistent_betti_oracle(&p, r, theta, 1, f).unwrap(),
                "cloud {i} theta {theta}"
            );
            positive += usize::from(b > 0);
        }
    }
    assert!(positive > 100, "only {positive} nonzero ranks");
}
