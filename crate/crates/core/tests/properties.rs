mod common;

use halftwist::ribbon::evaluate;
use halftwist::superalgebra::parse_algebra_spec;
use halftwist::tqft::partition_function;
use halftwist::{Cyclo, HalfTwistAlgebra, SurfaceSpec};
use proptest::prelude::*;

fn alg(spec: &str, alpha: &Cyclo) -> HalfTwistAlgebra {
    parse_algebra_spec(spec, alpha).unwrap()
}

#[test]
fn clifford_family_is_a_power_of_cl10() {
    let one = Cyclo::one();
    let base = alg("cl(1,0)", &one);
    for n in 0..=3usize {
        for p in 0..=n {
            let q = n - p;
            let a = alg(&format!("cl({p},{q})"), &one);
            for s in SurfaceSpec::library() {
                let z1 = partition_function(&base, &s).unwrap();
                let expect = z1.powi(p as i64 - q as i64).unwrap();
                assert_eq!(partition_function(&a, &s).unwrap(), expect, "cl({p},{q}) on {s}");
            }
        }
    }
}

#[test]
fn partition_function_modulus() {
    for alpha in [Cyclo::one(), Cyclo::sqrt2()] {
        for spec in ["cl(1,0)", "cl(1,2)", "cl(2,0)", "mat(1|1)", "mat(2|1)", "clc(1)", "clc(2)"] {
            let a = alg(spec, &alpha);
            for s in SurfaceSpec::library() {
                let z = partition_function(&a, &s).unwrap();
                let norm = &z * &z.conj();
                let unit = alpha.powi(2 * s.euler_characteristic()).unwrap();
                let central = !spec.starts_with("clc");
                if central || s.is_orientable() {
                    // |Z|^2 is |alpha|^{2 chi} up to the square of an integer multiplicity
                    assert!(!norm.is_zero(), "{spec} on {s}");
                    let ratio = norm.checked_div(&unit).unwrap();
                    assert!(ratio.as_rational().is_some(), "{spec} on {s}: {ratio}");
                    if central {
                        assert_eq!(ratio, Cyclo::one(), "{spec} on {s}");
                    }
                } else {
                    assert!(z.is_zero(), "{spec} on {s}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gluing_law(seed in any::<u64>(), which in 0usize..3) {
        let spec = ["cl(1,0)", "mat(1|1)", "cl(1,1)"][which];
        let a = alg(spec, &Cyclo::one());
        let mut rng = common::rng(seed);
        let lower = common::random_diagram(&mut rng, 4, 6);
        let top = lower.validate().unwrap().1;
        let mut upper = common::random_diagram(&mut rng, 4, 6);
        upper.bottom = top;
        upper.slices.clear();
        let extra = common::random_diagram(&mut rng, 4, 6);
        // keep only the slices of `extra` that fit on top of `lower`
        let mut w = top;
        for s in extra.slices {
            let (i, o) = s.gen.arity();
            if s.pos + i <= w && w - i + o <= 4 {
                upper.slices.push(s);
                w = w - i + o;
            }
        }
        let whole = evaluate(&lower.compose(&upper).unwrap(), &a).unwrap();
        let glued = evaluate(&lower, &a).unwrap().then(&evaluate(&upper, &a).unwrap()).unwrap();
        prop_assert_eq!(whole, glued);
    }

    #[test]
    fn left_twist_expansion_is_invisible(seed in any::<u64>()) {
        let a = alg("cl(2,1)", &Cyclo::sqrt2());
        let d = common::random_diagram(&mut common::rng(seed), 4, 8);
        prop_assert_eq!(evaluate(&d, &a).unwrap(), evaluate(&d.expand_left_twists(), &a).unwrap());
    }
}
