use cechlab::geometry::{sample_binomial, Density};
use cechlab::persistence::persistent_betti;
use cechlab::properties::{
    sep_indicator, subset_count, PropertyDescriptor, SmallGraph, SubsetPropertyDescriptor,
};
use cechlab::{rng, FieldSpec, PointCloud};
use rand::Rng as _;

fn builtins(r: f64, p: usize) -> Vec<PropertyDescriptor> {
    let mut out = vec![
        PropertyDescriptor::spread(r, p).unwrap(),
        PropertyDescriptor::conn(r, p).unwrap(),
        PropertyDescriptor::iso_graph(SmallGraph::path(p).unwrap(), r).unwrap(),
        PropertyDescriptor::iso_graph(SmallGraph::complete(p).unwrap(), r).unwrap(),
    ];
    if p >= 3 {
        out.push(PropertyDescriptor::iso_graph(SmallGraph::cycle(p).unwrap(), r).unwrap());
        out.push(PropertyDescriptor::zeta(r, p, 1.0, 1).unwrap());
        out.push(PropertyDescriptor::zeta(r, p, 1.1, 1).unwrap());
    }
    out
}

fn random_config(p: usize, rng: &mut cechlab::rng::Rng) -> PointCloud {
    sample_binomial(p, &Density::unit_cube(2).unwrap(), rng).unwrap()
}

#[test]
fn translation_invariance() {
    let mut rng = rng::root(41);
    let mut fired = 0;
    for i in 0..100 {
        let p = 2 + i % 4;
        let y = random_config(p, &mut rng);
        let t: Vec<f64> = (0..2).map(|_| rng.random_range(-100.0..100.0)).collect();
        let r = rng.random_range(0.2..1.0);
        for g in builtins(r, p) {
            let here = g.eval(&y);
            fired += usize::from(here);
            assert_eq!(here, g.eval(&y.translated(&t)), "config {i}");
        }
    }
    assert!(fired > 50);
}

#[test]
fn scaling_equivariance() {
    let mut rng = rng::root(42);
    for i in 0..100 {
        let p = 2 + i % 4;
        let y = random_config(p, &mut rng);
        let lambda = rng.random_range(0.1..10.0);
        let r = rng.random_range(0.2..1.0);
        for g in builtins(r, p) {
            let h = g.at_scale(lambda * r).unwrap();
            assert_eq!(g.eval(&y), h.eval(&y.scaled(lambda)), "config {i}");
        }
    }
}

#[test]
fn declared_locality_holds() {
    let mut rng = rng::root(43);
    for i in 0..2000 {
        let p = 2 + i % 4;
        let y = random_config(p, &mut rng);
        let r = rng.random_range(0.05..1.0);
        for g in builtins(r, p) {
            if g.eval(&y) {
                assert!(
                    y.diameter() <= g.locality_bound() * (1.0 + 1e-12),
                    "config {i}"
                );
            }
        }
    }
}

#[test]
fn upsilon_is_separation_times_zeta() {
    let mut rng = rng::root(44);
    let wide = Density::uniform_box(vec![0.0; 2], vec![2.0; 2]).unwrap();
    let mut both = 0;
    for i in 0..2000 {
        let x = sample_binomial(8, &wide, &mut rng).unwrap();
        let r = rng.random_range(0.1..0.5);
        let theta = [1.0, 1.1, 1.3][i % 3];
        let upsilon = SubsetPropertyDescriptor::upsilon(r, 3, theta, 1).unwrap();
        let zeta = PropertyDescriptor::zeta(r, 3, theta, 1).unwrap();
        for a in 0..8 {
            for b in a + 1..8 {
                for c in b + 1..8 {
                    let y = [a, b, c];
                    let product = sep_indicator(&y, &x, theta * r) && zeta.eval(&x.subset(&y));
                    assert_eq!(upsilon.eval(&y, &x), product);
                    both += usize::from(product);
                }
            }
        }
    }
    assert!(both > 0);
}

#[test]
fn separated_cycles_bound_persistent_betti() {
    let mut rng = rng::root(45);
    let unit = Density::unit_cube(2).unwrap();
    let mut cycles = 0;
    for i in 0..400 {
        let x = sample_binomial(40, &unit, &mut rng).unwrap();
        let r = rng.random_range(0.03..0.12);
        let (m, theta) = [(3, 1.0), (3, 1.1), (4, 1.3)][i % 3];
        let count = subset_count(
            &SubsetPropertyDescriptor::upsilon(r, m, theta, 1).unwrap(),
            &x,
        );
        let betti = persistent_betti(&x, r, theta, 1, FieldSpec::default()).unwrap();
        assert!(count <= betti as u64, "cloud {i}: {count} > {betti}");
        cycles += count;
    }
    assert!(cycles > 0);
}
