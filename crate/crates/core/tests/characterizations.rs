use std::sync::Arc;

use mfull::analysis::{analyze, Config, LowType};
use mfull::cli::verify::{instance, VerifyOptions};
use mfull::field::{PrimeField, Rng};
use mfull::generate::{random_graded_ideal, random_monomial_ideal, random_stable_ideal};
use mfull::ideal::{Ideal, Length};
use mfull::monomial_ideal::MonomialIdeal;
use mfull::poly::{Monomial, PolyRing};

fn ring(n: usize) -> Arc<PolyRing> {
    PolyRing::with_vars(PrimeField::default(), n).unwrap()
}

fn quick() -> Config {
    Config {
        homology: false,
        ..Config::default()
    }
}

#[test]
fn four_characterizations_agree() {
    let opts = VerifyOptions {
        seed: 99,
        ..VerifyOptions::default()
    };
    let mut both = [0, 0];
    for k in 0..80 {
        let (_, seed, ideal) = instance(&opts, k).unwrap();
        let r = analyze(&ideal, seed, &quick()).unwrap();
        assert!(r.consistent(), "{ideal:?}: {:?}", r.flags());
        assert!(r.mu <= r.b().unwrap());
        both[r.cmf_b.unwrap() as usize] += 1;
    }
    assert!(both[0] > 0 && both[1] > 0, "{both:?}");
}

#[test]
fn adjoining_a_variable_keeps_every_flag() {
    let mut rng = Rng::new(31);
    for k in 0..24 {
        let n = rng.range_inclusive(2, 3) as usize;
        let r = ring(n);
        let ideal = match k % 3 {
            0 => random_graded_ideal(&r, &mut rng, 3, 1, 3),
            1 => Ideal::from_monomials(&r, &random_monomial_ideal(n, &mut rng, 3, 1, 3)),
            _ => Ideal::from_monomials(&r, &random_stable_ideal(n, &mut rng, 2, 3)),
        };
        let bigger = ideal.extend(1).unwrap();
        let a = analyze(&ideal, 7, &quick()).unwrap();
        let b = analyze(&bigger, 7, &quick()).unwrap();
        assert_eq!(a.flags(), b.flags(), "{ideal:?}");
        assert_eq!(a.mu, b.mu);
    }
}

#[test]
fn linear_forms_and_a_power_are_gorenstein_and_componentwise_linear() {
    for n in 2..=4 {
        for d in 1..=5 {
            let r = ring(n);
            let mut gens: Vec<Monomial> = (0..n - 1).map(Monomial::var).collect();
            gens.push(Monomial::var(n - 1).with_exponent(n - 1, d));
            let ideal = Ideal::from_monomials(&r, &MonomialIdeal::new(n, gens));
            let rep = analyze(&ideal, 3, &Config::default()).unwrap();
            assert_eq!(rep.componentwise_linear, Some(true));
            assert!(rep.consistent());
            assert!(rep.profile.unwrap().gorenstein);
            assert_eq!(rep.ty, Length::Finite(1));
            assert_eq!(rep.low_type, Some(LowType::Holds));
        }
    }
}

#[test]
fn generic_linear_change_keeps_the_verdict() {
    let mut rng = Rng::new(8);
    for _ in 0..12 {
        let n = rng.range_inclusive(2, 3) as usize;
        let r = ring(n);
        let ideal = Ideal::from_monomials(&r, &random_monomial_ideal(n, &mut rng, 3, 1, 3));
        let (change, _) = mfull::poly::random_linear_change(&r, &mut rng);
        let moved = ideal.apply_change(&change);
        let a = analyze(&ideal, 2, &quick()).unwrap();
        let b = analyze(&moved, 2, &quick()).unwrap();
        assert_eq!(a.cmf_b, b.cmf_b, "{ideal:?}");
        assert_eq!(a.mu, b.mu);
    }
}
