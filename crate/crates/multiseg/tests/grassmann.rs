//! Grassmannian bases: the quantum orbit coefficient against the
//! Grothendieck-ring computation, and the stalk-weighted orbit count.

use multiseg::grassmann::{GrBase, GrPartition};
use multiseg::{Engine, RingVector};

fn bases() -> Vec<GrBase> {
    let mut v = vec![GrBase::new(&"[1,4]+[2,5]+[3,5]+[4,5]".parse().unwrap(), 5).unwrap()];
    for n in 1..=4usize {
        for r in 0..=n {
            v.push(GrBase::standard(r, n - r, n as i32 + 1).unwrap());
        }
    }
    v
}

#[test]
fn quantum_coefficient_matches_the_grothendieck_ring() {
    // n(a_μ, a_{μ♭}) is the multiplicity of L_{a_μ} in 𝒟^k(π(a_{μ♭})).
    let e = Engine::new();
    for base in bases() {
        for r1 in base.r..=base.n() {
            for mu in GrPartition::all(r1, (base.n() - r1) as u32) {
                let flat = base.multisegment_of_partition(&base.mu_flat(&mu).unwrap()).unwrap();
                let a_mu = base.multisegment_of_partition(&mu).unwrap();
                let d = e.to_irreducible(&e.dk(&RingVector::standard(&flat), base.k).unwrap()).unwrap();
                assert_eq!(
                    e.orbit_count_quantum(&base, &mu).unwrap(),
                    d.coeff(&a_mu),
                    "{} μ={}",
                    base.multisegment(),
                    mu
                );
            }
        }
    }
}

#[test]
fn stalk_weighted_count_matches() {
    let e = Engine::new();
    for base in bases() {
        for r1 in base.r..=base.n() {
            for mu in GrPartition::all(r1, (base.n() - r1) as u32) {
                let q = e.orbit_count_quantum(&base, &mu).unwrap();
                assert_eq!(e.orbit_count_weighted(&base, &mu).unwrap(), q, "{} μ={}", base.multisegment(), mu);
                assert!(e.orbit_count_n(&base, &mu).unwrap() as i64 <= q);
            }
        }
    }
}

#[test]
fn literal_orbit_count_undercounts_a_singular_case() {
    let e = Engine::new();
    let base = GrBase::standard(0, 4, 5).unwrap();
    let mu = GrPartition::new(vec![1, 2], 2).unwrap();
    assert_eq!(e.orbit_count_n(&base, &mu).unwrap(), 5);
    assert_eq!(e.orbit_count_weighted(&base, &mu).unwrap(), 6);
    assert_eq!(e.orbit_count_quantum(&base, &mu).unwrap(), 6);
}
