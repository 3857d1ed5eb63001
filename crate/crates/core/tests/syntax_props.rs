mod common;

use proptest::prelude::*;

use common::{fp, poly_strategy, weyl_strategy};
use weylab::exact::Ring;
use weylab::pipeline::corpus::default_corpus;
use weylab::syntax::{parse_poly, parse_weyl, EndoFile};
use weylab::weyl::WeylSignature;

fn any_ring() -> impl Strategy<Value = Ring> {
    prop_oneof![Just(Ring::Integer), Just(Ring::Rational), Just(fp(2)), Just(fp(5)), Just(fp(13))]
}

fn weyl_case() -> impl Strategy<Value = (usize, Ring, weylab::weyl::WeylElement)> {
    (1usize..=3, any_ring()).prop_flat_map(|(n, r)| (Just(n), Just(r), weyl_strategy(n, r, 5, 6)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn weyl_round_trip((n, ring, a) in weyl_case()) {
        let text = a.to_string();
        let back = parse_weyl(&text, WeylSignature::new(n), ring).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn poly_round_trip((ring, a) in any_ring().prop_flat_map(|r| (Just(r), poly_strategy(4, r, 4, 6)))) {
        let text = a.to_string();
        let back = parse_poly(&text, 4, ring).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn rendering_is_injective(a in weyl_strategy(2, Ring::Integer, 3, 3), b in weyl_strategy(2, Ring::Integer, 3, 3)) {
        prop_assert_eq!(a == b, a.to_string() == b.to_string());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn malformed_expressions_are_errors_not_panics(text in "[xy0-9+*^()/ \\-a!]{0,24}") {
        let sig = WeylSignature::new(2);
        for ring in [Ring::Integer, Ring::Rational, fp(3)] {
            if let Err(e) = parse_weyl(&text, sig, ring) {
                prop_assert!(e.offset <= text.len());
                prop_assert!(!e.to_string().is_empty());
            }
            if let Err(e) = parse_poly(&text, 4, ring) {
                prop_assert!(e.offset <= text.len());
            }
        }
    }

    #[test]
    fn malformed_endo_files_are_errors_not_panics(text in "(n = [0-3]\n)?(ring = (Z|Q|Fp:[0-9]|W)\n)?(d = [0-9]\n)?(y[0-5] -> [y0-9+*^ -]{0,8}\n){0,5}") {
        if let Ok(file) = EndoFile::parse(&text) {
            let _ = file.to_endo();
            prop_assert_eq!(EndoFile::parse(&file.render()).unwrap(), file);
        }
    }

    #[test]
    fn arbitrary_unicode_never_panics(text in "\\PC{0,16}") {
        let _ = parse_weyl(&text, WeylSignature::new(1), Ring::Integer);
        let _ = EndoFile::parse(&text);
    }
}

#[test]
fn corpus_files_round_trip() {
    for e in default_corpus() {
        let file = EndoFile::from_endo(&e.endo);
        let back = EndoFile::parse(&file.render()).unwrap();
        assert_eq!(back.to_endo().unwrap(), e.endo, "{}", e.name);
    }
}
