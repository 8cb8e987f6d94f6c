//! Cross-module invariants, fixed seed.

mod common;

use std::sync::OnceLock;

use blowdown::exact::{rat, Rational};
use blowdown::fibers::{conjugacy, McgWord, Sl2, Verdict};
use blowdown::homology::{pair, H2Class};
use blowdown::park::{self, blowdown_pairing, build_c7_embedding, BlowdownPairing, C7Embedding, SymbolicClass};
use blowdown::pencil::{member_singularities, CubicPencil, PencilParam};
use common::*;
use proptest::prelude::*;

fn fixture() -> &'static (C7Embedding, BlowdownPairing) {
    static CELL: OnceLock<(C7Embedding, BlowdownPairing)> = OnceLock::new();
    CELL.get_or_init(|| {
        let emb = build_c7_embedding().unwrap();
        let p = blowdown_pairing(&H2Class::canonical(13), &SymbolicClass::omega(), &emb).unwrap();
        (emb, p)
    })
}

fn word_text(w: &[(bool, i64)]) -> String {
    let parts: Vec<String> =
        w.iter().filter(|(_, k)| *k != 0).map(|(a, k)| format!("{}^{}", if *a { "a" } else { "b" }, k)).collect();
    parts.join(" ")
}

proptest! {
    #![proptest_config(config(1000))]

    /// The symbolic functional agrees with K·ω − K|C·ω|C evaluated numerically.
    #[test]
    fn functional_matches_numeric_pairing(a in -30i64..31, b in proptest::collection::vec(-30i64..31, 13)) {
        let (emb, pairing) = fixture();
        let omega = H2Class::new(rat(a, 1), b.iter().map(|&x| rat(-x, 1)).collect());
        let k = H2Class::canonical(13);
        let k_omega = pair(&k, &omega).unwrap();
        let kc = park::restrict(&k, emb).unwrap();
        let wc = park::restrict(&omega, emb).unwrap();
        let config_term = park::pair_in_config_numeric(&kc, &wc, emb).unwrap();
        let mut values = vec![rat(a, 1)];
        values.extend(b.iter().map(|&x| rat(x, 1)));
        prop_assert_eq!(pairing.functional.eval(&values).unwrap(), &k_omega - &config_term);
        prop_assert_eq!(pairing.k_omega.eval(&values).unwrap(), k_omega);
        prop_assert_eq!(pairing.configuration.eval(&values).unwrap(), config_term);
        // Oracle: 7·L is the printed integer form.
        let printed = [54, -18, -16, -20, -18, -16, -17, -18, -17, -16, -5, -5, -5, -5];
        let seven_l: i128 = printed.iter().zip(&values).map(|(c, v)| *c as i128 * to_i128(v.numer())).sum();
        prop_assert_eq!(pairing.functional.eval(&values).unwrap() * rat(7, 1), Rational::from_integer(seven_l.into()));
    }

    /// Every conjugate w⁻¹·a·w is recognised as I₁ and the witness found conjugates back.
    #[test]
    fn conjugates_of_a_are_found(w in proptest::collection::vec((any::<bool>(), -1i64..2), 0..4)) {
        let word = McgWord::parse(&word_text(&w)).unwrap();
        let factor = word.inverse().concat(&McgWord::parse("a").unwrap()).concat(&word).evaluate();
        let target = Sl2::new(1, 1, 0, 1);
        let (verdict, _, found, _) = conjugacy(&factor, &target, Some(&word), 6);
        prop_assert_eq!(verdict, Verdict::Yes);
        let wm = sl2_rows(&found.unwrap_or(word).evaluate());
        let f = sl2_rows(&factor);
        prop_assert_eq!(m2(&m2(&wm, &f), &m2_inv(&wm)), A);
    }
}

proptest! {
    #![proptest_config(config(200))]

    /// α·z³ + zy² − zx² − x³ is singular exactly at α = 0 and α = 4/27.
    #[test]
    fn e8_members_singular_only_at_known_parameters(n in -60i64..61, d in 1i64..40) {
        let pencil = CubicPencil::named("@e8pencil").unwrap();
        let alpha = rat(n, d);
        let member = pencil.member(&PencilParam::affine(alpha.clone()));
        let s = member_singularities(&member).unwrap();
        let expect = alpha == rat(0, 1) || alpha == rat(4, 27);
        prop_assert_eq!(!s.points.is_empty(), expect);
        prop_assert!(!s.degenerate);
    }

    /// The CLI is deterministic and its hj output evaluates back to p/q.
    #[test]
    fn cli_hj_is_deterministic(p in 2i64..300, qq in 1i64..300) {
        prop_assume!(qq < p && gcd(p as i128, qq as i128) == 1);
        let args = ["blowdown".to_string(), "hj".into(), p.to_string(), qq.to_string()];
        let (c1, o1) = blowdown::cli::run(args.clone());
        let (c2, o2) = blowdown::cli::run(args);
        prop_assert_eq!((c1, c2), (0, 0));
        prop_assert_eq!(&o1, &o2);
        let v: serde_json::Value = serde_json::from_str(&o1).unwrap();
        let a: Vec<i64> = v["results"]["coefficients"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
        prop_assert_eq!(hj_value(&a), q(p as i128, qq as i128));
    }
}
