use hallforge::json::{basis_entries, BasisEntry, BinomialFormJson, ElementJson, PolySetJson, WordJson};
use hallforge::sampling::Sampler;
use hallforge_core::group::NilpotentGroup;
use hallforge_core::hall_poly::derive_hall_polynomials;
use hallforge_core::magnus::hall_basis;
use hallforge_core::ring::{BinomialForm, Ring};
use hallforge_core::BigInt;
use proptest::prelude::*;

fn through_text<T: serde::Serialize + serde::de::DeserializeOwned>(v: &T) -> T {
    serde_json::from_str(&serde_json::to_string(v).unwrap()).unwrap()
}

#[test]
fn basis_entries_round_trip() {
    let entries = basis_entries(&hall_basis(3, 3).unwrap());
    let back: Vec<BasisEntry> = through_text(&entries);
    assert_eq!(back, entries);
}

#[test]
fn polynomials_round_trip() {
    let polys = derive_hall_polynomials(2, 3).unwrap();
    let vars = match polys.power_ring() {
        Ring::Polynomial(v) => v.clone(),
        _ => unreachable!(),
    };
    let set = PolySetJson::from_polys(&vars, polys.power());
    assert_eq!(through_text(&set).to_polys().unwrap(), polys.power());
}

#[test]
fn malformed_terms_rejected() {
    let set: PolySetJson =
        serde_json::from_str(r#"{"variables":["x"],"polynomials":[[{"exps":[1,2],"num":"1","den":"1"}]]}"#).unwrap();
    assert_eq!(set.to_polys().unwrap_err().exit_code(), 1);
    let set: PolySetJson =
        serde_json::from_str(r#"{"variables":["x"],"polynomials":[[{"exps":[1],"num":"1","den":"0"}]]}"#).unwrap();
    assert!(set.to_polys().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn elements_round_trip(seed in any::<u64>(), rational in any::<bool>(), (r, c) in prop_oneof![Just((2, 3)), Just((3, 2)), Just((2, 4))]) {
        let ring = if rational { Ring::Rationals } else { Ring::Integers };
        let g = NilpotentGroup::new(r, c, ring).unwrap();
        let mut s = Sampler::new(seed);
        let x = g.mul(&s.element(&g, 9), &s.element(&g, 9)).unwrap();
        let json = ElementJson::from_element(&x);
        prop_assert_eq!(through_text(&json).to_element(&g).unwrap(), x);
    }

    #[test]
    fn words_round_trip(seed in any::<u64>(), len in 0usize..8) {
        let g = NilpotentGroup::new(2, 3, Ring::Integers).unwrap();
        let w = Sampler::new(seed).word(&g, len, 9);
        let json = WordJson::from_word(&w, 2, 3);
        prop_assert_eq!(through_text(&json).to_word(&g).unwrap(), w);
    }

    #[test]
    fn binomial_forms_round_trip(terms in prop::collection::vec((0u32..4, 0u32..4, -50i64..50), 0..6)) {
        let f = BinomialForm::from_terms(2, terms.iter().map(|&(i, j, c)| (vec![i, j], BigInt::from(c)))).unwrap();
        let json = BinomialFormJson::from_form(&f);
        prop_assert_eq!(through_text(&json).to_form(2).unwrap(), f);
    }
}
