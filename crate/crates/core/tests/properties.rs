use lcdmds::construct::{find_lcd_scalar, same_weights_under_scaling, scale_right_block};
use lcdmds::oracle;
use lcdmds::{Felt, FieldSpec, Form, LinearCode, Mat};
use proptest::prelude::*;

const FIELDS: &[(u32, u32)] = &[(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (5, 2), (13, 1)];

fn field() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(FIELDS).prop_map(|(p, m)| FieldSpec::new(p, m).unwrap())
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Mat> {
    (field(), 1..=max_rows, 1..=max_cols).prop_flat_map(|(f, r, c)| {
        let q = f.q();
        prop::collection::vec(0..q, r * c)
            .prop_map(move |d| Mat::from_vec(&f, r, c, d.into_iter().map(Felt).collect()).unwrap())
    })
}

fn square_matrix(max: usize) -> impl Strategy<Value = Mat> {
    (field(), 1..=max).prop_flat_map(|(f, r)| {
        let q = f.q();
        prop::collection::vec(0..q, r * r)
            .prop_map(move |d| Mat::from_vec(&f, r, r, d.into_iter().map(Felt).collect()).unwrap())
    })
}

fn code(max_k: usize, max_n: usize) -> impl Strategy<Value = LinearCode> {
    matrix(max_k, max_n).prop_map(|m| LinearCode::span(&m)).prop_filter("nonzero", |c| c.k() > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scaling_preserves_weights(p in matrix(3, 4), a in 1u32..64) {
        let f = p.field().clone();
        let alpha = Felt(a % (f.q() - 1) + 1);
        prop_assert!(same_weights_under_scaling(&p, alpha, 100_000).unwrap());
    }

    #[test]
    fn scaled_code_has_unchanged_distance(p in matrix(3, 4), a in 1u32..64) {
        let f = p.field().clone();
        let alpha = Felt(a % (f.q() - 1) + 1);
        let c1 = scale_right_block(&f, &p, Felt::ONE).unwrap();
        let ca = scale_right_block(&f, &p, alpha).unwrap();
        prop_assert_eq!(c1.min_distance(1 << 20).unwrap().d, ca.min_distance(1 << 20).unwrap().d);
    }

    #[test]
    fn spectrum_matches_determinant(p in matrix(4, 4)) {
        let f = p.field().clone();
        let ppt = p.gram(Form::Euclidean).unwrap();
        let spec: Vec<Felt> = oracle::spectrum(&ppt).unwrap().into_iter().map(|(x, _)| x).collect();
        let ident = Mat::identity(&f, p.rows());
        for a in f.nonzero() {
            let a2 = f.mul(a, a);
            let singular = ident.add(&ppt.scale(a2)).unwrap().det().unwrap().is_zero();
            prop_assert_eq!(singular, spec.contains(&f.neg(f.inv(a2).unwrap())));
        }
    }

    #[test]
    fn charpoly_methods_agree(m in square_matrix(7)) {
        prop_assert_eq!(oracle::charpoly_cofactor(&m).unwrap(), oracle::charpoly_berkowitz(&m).unwrap());
    }

    #[test]
    fn found_scalar_gives_lcd(p in matrix(3, 5)) {
        let f = p.field().clone();
        if let Ok(alpha) = find_lcd_scalar(&f, &p, Form::Euclidean) {
            prop_assert!(scale_right_block(&f, &p, alpha).unwrap().is_lcd());
        }
    }

    #[test]
    fn hull_dim_matches_bruteforce(c in code(4, 6)) {
        for form in [Form::Euclidean, Form::Hermitian] {
            if form == Form::Hermitian && !c.field().is_square_extension() {
                continue;
            }
            let slow = oracle::hull_basis_bruteforce(&c, form).unwrap().rows();
            prop_assert_eq!(c.hull_dim(form).unwrap(), slow);
        }
    }

    #[test]
    fn dual_of_lcd_is_lcd(c in code(4, 6)) {
        for form in [Form::Euclidean, Form::Hermitian] {
            if form == Form::Hermitian && !c.field().is_square_extension() {
                continue;
            }
            let d = c.dual_in(form).unwrap();
            prop_assert_eq!(c.is_lcd_in(form).unwrap(), d.is_lcd_in(form).unwrap());
            prop_assert_eq!(c.hull_dim(form).unwrap(), d.hull_dim(form).unwrap());
        }
    }

    #[test]
    fn mds_and_distance_match_oracles(c in code(3, 6)) {
        prop_assert_eq!(c.is_mds().unwrap().mds, oracle::mds_exhaustive(&c, 1 << 20).unwrap());
        prop_assert_eq!(c.min_distance(1 << 20).unwrap().d, oracle::distance_exhaustive(&c, 1 << 22).unwrap());
    }
}
