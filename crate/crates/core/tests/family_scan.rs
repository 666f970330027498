use motivic_core::family::{evaluate, scan, GermFamily};
use motivic_core::rational::{q, qi};
use motivic_core::Symbol;
use proptest::prelude::*;

#[test]
fn pencil_of_three_lines() {
    let f = GermFamily::parse("x*(x - y)*(x - t*y)").unwrap();
    for e in Symbol::ALL {
        let r = scan(&f, &qi(-2), &qi(2), 17, e).unwrap();
        assert_eq!(r.breakpoints, vec![qi(0), qi(1)], "{e}");
        assert_eq!(r.plateaus().len(), 1, "{e}");
    }
}

#[test]
fn quadratic_family_all_symbols() {
    let f = GermFamily::parse("x^2 - t*y^2").unwrap();
    for e in Symbol::ALL {
        let r = scan(&f, &qi(-2), &qi(2), 17, e).unwrap();
        assert_eq!(r.breakpoints, vec![qi(0)], "{e}");
        assert_eq!(r.intervals.len(), 2, "{e}");
    }
}

#[test]
fn mirrored_family_gives_mirrored_report() {
    for text in ["x^2 - t*y^2", "x*(x - y)*(x - t*y)", "y^2 - x^3 + t*x^2"] {
        let f = GermFamily::parse(text).unwrap();
        let a = scan(&f, &qi(-2), &qi(3), 11, Symbol::Plus1).unwrap();
        let b = scan(&f.mirrored(), &qi(-3), &qi(2), 11, Symbol::Plus1).unwrap();
        let mut mb: Vec<_> = b.breakpoints.iter().map(|t| -t).collect();
        mb.sort();
        assert_eq!(a.breakpoints, mb, "{text}");
        assert_eq!(a.samples.len(), b.samples.len());
        for (x, y) in a.samples.iter().zip(b.samples.iter().rev()) {
            assert_eq!(x.t, -&y.t);
            assert_eq!(x.beta, y.beta, "{text} at {}", x.t);
        }
    }
}

fn constancy_case(text: &'static str, k: i64) -> Result<(), TestCaseError> {
    let f = GermFamily::parse(text).unwrap();
    let r = scan(&f, &qi(-2), &qi(2), 9, Symbol::Plus1).unwrap();
    for iv in &r.intervals {
        // interior fresh points strictly between the endpoints
        let t = &iv.left + (&iv.right - &iv.left) * q(k, 1000);
        if t == iv.left || t == iv.right {
            continue;
        }
        prop_assert_eq!(evaluate(&f, &t, Symbol::Plus1).unwrap(), iv.beta.clone());
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn resampling_reproduces_interval_values(k in 1i64..1000, which in 0usize..2) {
        let text = ["x^2 - t*y^2", "x*(x - y)*(x - t*y)"][which];
        constancy_case(text, k)?;
    }
}
