use mfull::cli::parse::{parse, IdealDocument};
use mfull::field::{Fp, PrimeField};
use mfull::poly::{Monomial, PolyRing, Polynomial};
use proptest::prelude::*;

fn names(style: u8, n: usize) -> Vec<String> {
    match style {
        0 => ["x", "y", "z", "w", "u", "v"][..n].iter().map(|s| s.to_string()).collect(),
        1 => (1..=n).map(|i| format!("x{i}")).collect(),
        _ => (0..n).map(|i| format!("a_{i}b")).collect(),
    }
}

/// A homogeneous polynomial given by its degree and raw terms.
fn form(n: usize) -> impl Strategy<Value = (u32, Vec<(Vec<u32>, u32)>)> {
    (1u32..=5).prop_flat_map(move |d| {
        let term = (proptest::collection::vec(0u32..=d, n), 0u32..100_000).prop_map(move |(mut e, c)| {
            // push the leftover degree onto the last variable
            let mut left = d;
            for x in e.iter_mut() {
                *x = (*x).min(left);
                left -= *x;
            }
            *e.last_mut().unwrap() += left;
            (e, c)
        });
        (Just(d), proptest::collection::vec(term, 1..6))
    })
}

fn document() -> impl Strategy<Value = IdealDocument> {
    (1usize..=6, 0u8..3, prop_oneof![Just(101u64), Just(7919), Just(32003)]).prop_flat_map(
        |(n, style, p)| {
            proptest::collection::vec(form(n), 0..5).prop_map(move |forms| {
                let field = PrimeField::new(p).unwrap();
                let ring = PolyRing::new(field, names(style, n)).unwrap();
                let generators: Vec<Polynomial> = forms
                    .into_iter()
                    .map(|(_, terms)| {
                        ring.from_terms(
                            terms
                                .into_iter()
                                .map(|(e, c)| (Monomial::from_exponents(&e), Fp(c % p as u32)))
                                .collect(),
                        )
                    })
                    .filter(|g| !g.is_zero())
                    .collect();
                IdealDocument {
                    lines: vec![0; generators.len()],
                    ring,
                    generators,
                }
            })
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printing_then_parsing_is_the_identity(doc in document()) {
        let text = doc.to_string();
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.to_string(), text);
    }
}
