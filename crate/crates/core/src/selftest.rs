//! Startup invariant battery. Every item re-derives a structural fact
//! from scratch and reports pass/fail; the battery is parameterized over
//! the isogeny so a deliberately corrupted orientation can serve as a
//! negative control.

use num::BigUint;

use crate::characters::{weyl_character, weyl_dim};
use crate::isogeny::{restricted_count, Isogeny};
use crate::lattice::{RootDatum, Weight, RANK};

#[derive(Clone, Debug)]
pub struct SelfTestItem {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

fn item(name: &'static str, pass: bool, detail: String) -> SelfTestItem {
    SelfTestItem { name, pass, detail }
}

/// Run the battery against a given isogeny action.
pub fn run(iso: &Isogeny) -> Vec<SelfTestItem> {
    let datum = RootDatum::f4();
    let mut items = Vec::new();

    let square_ok = iso.tau_square_is_doubling();
    items.push(item(
        "tau-square",
        square_ok,
        "tau* applied twice must double every weight".to_string(),
    ));

    let rho_pairing = datum.alpha0_pairing(&Weight::rho());
    let h = datum.coxeter_number();
    items.push(item(
        "rho-pairing",
        rho_pairing == 11 && 2 * h - 2 == 22,
        format!("<rho, a0v> = {rho_pairing} (want 11), 2h - 2 = {} (want 22)", 2 * h - 2),
    ));

    let total = datum.roots().len();
    let positive = datum.positive_roots().count();
    let short = datum.roots().iter().filter(|r| r.length_sq == 2).count();
    items.push(item(
        "positive-roots",
        total == 48 && positive == 24 && short == 24,
        format!("{total} roots, {positive} positive, {short} short (want 48/24/24)"),
    ));

    let order = datum.weyl_order();
    items.push(item(
        "weyl-order",
        order == 1152,
        format!("|W| = {order} by reflection closure (want 1152)"),
    ));

    let self_dual = (1..=RANK).all(|i| {
        let w = Weight::fundamental(i);
        datum.dual_weight(&w) == w
    }) && datum.dual_weight(&Weight([3, 1, 4, 1])) == Weight([3, 1, 4, 1]);
    items.push(item(
        "self-dual-weights",
        self_dual,
        "-w0 must act trivially: lambda* = lambda".to_string(),
    ));

    for (name, r) in [("digit-bijection-r1", 1u32), ("digit-bijection-r3", 3u32)] {
        let pass = digit_bijection(iso, r);
        items.push(item(
            name,
            pass,
            format!("tau-adic digits must biject the 4^{r} restricted weights at level {r}"),
        ));
    }

    let dims_ok = (|| {
        let d26 = weyl_dim(datum, &Weight::fundamental(4)).ok()?;
        let c26 = weyl_character(datum, &Weight::fundamental(4)).ok()?;
        let d52 = weyl_dim(datum, &Weight::fundamental(1)).ok()?;
        let c52 = weyl_character(datum, &Weight::fundamental(1)).ok()?;
        Some(
            d26 == BigUint::from(26u32)
                && c26.dim() == &d26
                && d52 == BigUint::from(52u32)
                && c52.dim() == &d52,
        )
    })()
    .unwrap_or(false);
    items.push(item(
        "dimension-cross-check",
        dims_ok,
        "dim H0(w4) = 26 and dim H0(w1) = 52 by both the product formula and Freudenthal".to_string(),
    ));

    let counts_ok = (1..=3).all(|r| {
        iso.enumerate_restricted(r, 1 << 10)
            .map(|v| BigUint::from(v.len()) == restricted_count(r))
            .unwrap_or(false)
    });
    items.push(item(
        "restricted-counts",
        counts_ok,
        "|X| = 4^r at levels 1, 2, 3".to_string(),
    ));

    items
}

fn digit_bijection(iso: &Isogeny, r: u32) -> bool {
    let weights = match iso.enumerate_restricted(r, 1 << 12) {
        Ok(w) => w,
        Err(_) => return false,
    };
    weights.iter().all(|lam| {
        iso.digits(r, lam)
            .map(|d| iso.assemble(&d) == *lam)
            .unwrap_or(false)
    })
}

pub fn all_pass(items: &[SelfTestItem]) -> bool {
    items.iter().all(|i| i.pass)
}
