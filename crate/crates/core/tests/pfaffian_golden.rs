//! Golden tests: the six reference charts emit Pfaffian systems whose
//! spans match the published 10-equation displays exactly.

mod common;

use common::{annihilates, form, golden_forms, v};
use flagtower_core::algebra::matrix::poly_row_rank;
use flagtower_core::charts::{fixture, pfaffian_system, xi, yi, T};

#[test]
fn golden_spans_match_all_fixtures() {
    for name in flagtower_core::charts::FIXTURE_NAMES {
        let chart = fixture(name, &[]).unwrap();
        let ring = chart.ring();
        let golden = golden_forms(name, ring);
        assert_eq!(golden.len(), 10, "{name}");

        // each golden form annihilates every distribution generator
        for (i, f) in golden.iter().enumerate() {
            assert!(annihilates(&chart, f), "{name}: golden form {i}");
        }
        // the golden forms are independent: rank 10 = 2r
        assert_eq!(poly_row_rank(&golden), 10, "{name}: golden rank");

        // emitted system spans the same annihilator
        let pf = pfaffian_system(&chart).unwrap();
        assert_eq!(pf.forms().len(), 10, "{name}: emitted count");
        let mut all = golden.clone();
        all.extend(pf.forms().iter().cloned());
        assert_eq!(poly_row_rank(&all), 10, "{name}: span mismatch");
    }
}

#[test]
fn contact_chart_pfaffian_is_contact_system() {
    let code = flagtower_core::flagcomb::validate_code("1.1.1", 2).unwrap();
    let chart = flagtower_core::charts::build_chart(
        &code,
        flagtower_core::charts::zero_steps(&code),
    )
    .unwrap();
    let ring = chart.ring();
    let mut golden = Vec::new();
    for k in 0..3 {
        golden.push(form(ring, xi(k), T, v(ring, &format!("x{}", k + 1))));
        golden.push(form(ring, yi(k), T, v(ring, &format!("y{}", k + 1))));
    }
    for f in &golden {
        assert!(annihilates(&chart, f));
    }
    assert_eq!(poly_row_rank(&golden), 6);
    let pf = pfaffian_system(&chart).unwrap();
    let mut all = golden.clone();
    all.extend(pf.forms().iter().cloned());
    assert_eq!(poly_row_rank(&all), 6);
}
