//! The shipped axiom table and its text rendering.
//!
//! `data/axioms.eq` is the rendered form of [`equations`]; a unit test keeps
//! the two identical. Set `FROBPAIR_BLESS=1` while running that test to
//! rewrite the file.

use super::{parse_term, parse_theory, Equation, Provenance, Theory};

/// Rendering order of groups.
pub const GROUPS: [&str; 11] = [
    "frobA",
    "moduleE",
    "comoduleE",
    "cancel",
    "muDeltaE",
    "EEA",
    "compat",
    "consistency",
    "derived",
    "mobius",
    "quarantine",
];

pub const SHIPPED: &str = include_str!("../../data/axioms.eq");

struct Src {
    name: &'static str,
    group: &'static str,
    provenance: Provenance,
    body: &'static str,
    original: Option<&'static str>,
}

const fn s(name: &'static str, group: &'static str, body: &'static str) -> Src {
    Src { name, group, provenance: Provenance::Stated, body, original: None }
}

const fn fixed(name: &'static str, group: &'static str, body: &'static str, original: &'static str) -> Src {
    Src { name, group, provenance: Provenance::Corrected, body, original: Some(original) }
}

const fn quarantined(name: &'static str, body: &'static str, original: &'static str) -> Src {
    Src { name, group: "quarantine", provenance: Provenance::Corrected, body, original: Some(original) }
}

#[rustfmt::skip]
const SOURCE: &[Src] = &[
    s("assoc", "frobA", "(mu_A (x) id_A) ; mu_A == (id_A (x) mu_A) ; mu_A"),
    s("unit_l", "frobA", "(eta (x) id_A) ; mu_A == id_A"),
    s("unit_r", "frobA", "(id_A (x) eta) ; mu_A == id_A"),
    s("coassoc", "frobA", "Delta_A ; (Delta_A (x) id_A) == Delta_A ; (id_A (x) Delta_A)"),
    s("counit_l", "frobA", "Delta_A ; (eps (x) id_A) == id_A"),
    s("counit_r", "frobA", "Delta_A ; (id_A (x) eps) == id_A"),
    s("frob1", "frobA", "mu_A ; Delta_A == (id_A (x) Delta_A) ; (mu_A (x) id_A)"),
    s("frob2", "frobA", "mu_A ; Delta_A == (Delta_A (x) id_A) ; (id_A (x) mu_A)"),
    s("cancelA1", "frobA", "(id_A (x) gamma) ; (beta (x) id_A) == id_A"),
    s("cancelA2", "frobA", "(gamma (x) id_A) ; (id_A (x) beta) == id_A"),
    s("comm", "frobA", "swap_AA ; mu_A == mu_A"),
    s("cocomm", "frobA", "Delta_A ; swap == Delta_A"),

    s("act_assoc", "moduleE", "(id_A (x) mu_AE) ; mu_AE == (mu_A (x) id_E) ; mu_AE"),
    s("act_unit", "moduleE", "(eta (x) id_E) ; mu_AE == id_E"),
    s("act_comm", "moduleE", "mu_EA == swap_EA ; mu_AE"),

    s("coact_coassoc", "comoduleE", "Delta_AE ; (id_A (x) Delta_AE) == Delta_AE ; (Delta_A (x) id_E)"),
    s("coact_counit", "comoduleE", "Delta_AE ; (eps (x) id_E) == id_E"),
    s("coact_cocomm", "comoduleE", "Delta_EA == Delta_AE ; swap"),

    s("cancel1", "cancel", "(id_A (x) Delta_AE) ; (beta (x) id_E) == mu_AE"),
    s("cancel2", "cancel", "(gamma (x) id_E) ; (id_A (x) mu_AE) == Delta_AE"),

    s("E_assoc", "muDeltaE", "(mu_E (x) id_E) ; mu_E == (id_E (x) mu_E) ; mu_E"),
    s("E_comm", "muDeltaE", "swap_EE ; mu_E == mu_E"),
    s("E_coassoc", "muDeltaE", "Delta_E ; (Delta_E (x) id_E) == Delta_E ; (id_E (x) Delta_E)"),
    s("E_cocomm", "muDeltaE", "Delta_E ; swap == Delta_E"),
    s("E_linear", "muDeltaE", "(id_A (x) mu_E) ; mu_AE == (mu_AE (x) id_E) ; mu_E"),
    s("E_colinear", "muDeltaE", "Delta_E ; (Delta_AE (x) id_E) == Delta_AE ; (id_A (x) Delta_E)"),
    s("E_compat1", "muDeltaE", "(Delta_E (x) id_E) ; (id_E (x) mu_E) == mu_E ; Delta_E"),
    s("E_compat2", "muDeltaE", "(id_E (x) Delta_E) ; (mu_E (x) id_E) == mu_E ; Delta_E"),

    s("EEA1", "EEA", "(mu_EEA (x) id_E) ; mu_AE == (id_E (x) mu_EEA) ; mu_EA"),
    s("EEA2", "EEA", "(mu_E (x) id_E) ; mu_EEA == (id_E (x) mu_E) ; mu_EEA"),
    s("EEA3", "EEA", "Delta_AE ; (Delta_AEE (x) id_E) == Delta_EA ; (id_E (x) Delta_AEE)"),
    s("EEA4", "EEA", "Delta_AEE ; (Delta_E (x) id_E) == Delta_AEE ; (id_E (x) Delta_E)"),

    s("compat1", "compat", "mu_AE ; Delta_AE == (Delta_A (x) id_E) ; (id_A (x) mu_AE)"),
    s("compat2", "compat", "mu_E ; Delta_AE == (Delta_AE (x) id_E) ; (id_A (x) mu_E)"),
    s("compat3", "compat", "mu_EEA ; Delta_AEE == (Delta_EA (x) id_E) ; (id_E (x) mu_AE)"),

    s("consist1", "consistency", "(mu_EEA (x) id_E) ; mu_AE == (mu_E (x) id_E) ; mu_E"),
    s("consist2", "consistency", "mu_EEA ; Delta_AEE == mu_E ; Delta_E"),
    s("consist3", "consistency", "Delta_AE ; mu_AE == Delta_E ; mu_E"),

    s("gamma_delta_l", "derived", "(id_A (x) gamma) ; (mu_A (x) id_A) == Delta_A"),
    s("gamma_delta_r", "derived", "(gamma (x) id_A) ; (id_A (x) mu_A) == Delta_A"),
    s("beta_symm", "derived", "swap_AA ; beta == beta"),
    s("coact_from_unit", "derived", "(eta (x) id_E) ; (Delta_A (x) id_E) ; (id_A (x) mu_AE) == Delta_AE"),
    s("ract_assoc", "derived", "(mu_EA (x) id_A) ; mu_EA == (id_E (x) mu_A) ; mu_EA"),
    s("ract_unit", "derived", "(id_E (x) eta) ; mu_EA == id_E"),
    s("act_mixed", "derived", "(mu_AE (x) id_A) ; mu_EA == (id_A (x) mu_EA) ; mu_AE"),
    s("rcancel", "derived", "(Delta_EA (x) id_A) ; (id_E (x) beta) == mu_EA"),
    s("rcoact_counit", "derived", "Delta_EA ; (id_E (x) eps) == id_E"),
    s("handle_E", "derived", "(eta (x) id_E) ; (Delta_A (x) id_E) ; (mu_A (x) id_E) ; mu_AE == Delta_AE ; mu_AE"),
    s("EEA_linear", "derived", "(mu_AE (x) id_E) ; mu_EEA == (id_A (x) mu_EEA) ; mu_A"),
    s("EEA_comm", "derived", "swap_EE ; mu_EEA == mu_EEA"),
    s("AEE_cocomm", "derived", "Delta_AEE ; swap == Delta_AEE"),

    s("mob1a", "mobius", "nu_AE ; nu_EA == Delta_A ; mu_A"),
    s("mob1b", "mobius", "Delta_A ; mu_A == Delta_AEE ; mu_EEA"),
    s("mob2", "mobius", "nu_EE ; nu_EE == Delta_E ; mu_E"),
    fixed("mob3l", "mobius", "(nu_AE (x) id_A) ; mu_EA == mu_A ; nu_AE",
          "mu^E_{E,A} (nu^E_A (x) id_E) = nu^E_A mu_A : A(x)E -> E"),
    s("mob3r", "mobius", "Delta_EA ; (nu_EA (x) id_A) == nu_EA ; Delta_A"),
    fixed("mob4l", "mobius", "(nu_EA (x) id_A) ; mu_A == mu_EA ; nu_EA",
          "mu_A (nu^A_E (x) id_A) = nu^A_E mu^E_{A,E} : E(x)A -> E"),
    s("mob4r", "mobius", "Delta_A ; (nu_AE (x) id_A) == nu_AE ; Delta_EA"),
    fixed("mob5l", "mobius", "(nu_AE (x) id_E) ; mu_EEA == (id_A (x) nu_EA) ; mu_A",
          "row repeats mu_E (nu^E_A (x) id_E) = nu^E_E mu^E_{A,E}; upside-down of the right-hand relation used"),
    s("mob5r", "mobius", "Delta_AEE ; (nu_EA (x) id_E) == Delta_A ; (id_A (x) nu_AE)"),
    s("mob6l", "mobius", "(nu_AE (x) id_E) ; mu_E == mu_AE ; nu_EE"),
    s("mob6r", "mobius", "Delta_E ; (nu_EA (x) id_E) == nu_EE ; Delta_AE"),
    fixed("mob8l", "mobius", "(id_A (x) nu_EE) ; mu_AE == mu_AE ; nu_EE",
          "mu^A_{A,E} (id_A (x) nu^E_E) = nu^E_E mu^E_{A,E} : A(x)E -> A"),
    s("mob8r", "mobius", "Delta_AE ; (id_A (x) nu_EE) == nu_EE ; Delta_AE"),
    s("mob9l", "mobius", "(nu_EE (x) id_E) ; mu_E == mu_E ; nu_EE"),
    fixed("mob9r", "mobius", "Delta_E ; (nu_EE (x) id_E) == nu_EE ; Delta_E",
          "(nu^E_A (x) id_E) Delta_E = Delta_E nu^E_E : A -> A(x)E"),

    quarantined("mob7l", "mu_E ; nu_EA == mu_EEA",
                "nu^E_A mu_E = mu^A_{E,E} : E(x)E -> A"),
    quarantined("mob7r", "nu_AE ; Delta_E == Delta_AEE ; (nu_EE (x) id_E)",
                "Delta_E nu^E_E = (nu^E_E (x) id_E) Delta^{E,E}_A : A -> E(x)E"),
    quarantined("mob7r_alt", "Delta_AEE == nu_AE ; Delta_E",
                "upside-down reading of nu^E_A mu_E = mu^A_{E,E}"),
];

fn build(src: &Src) -> Equation {
    let (l, r) = src.body.split_once("==").expect("static equation has '=='");
    let lhs = parse_term(l).unwrap_or_else(|e| panic!("{}: {e}", src.name));
    let rhs = parse_term(r).unwrap_or_else(|e| panic!("{}: {e}", src.name));
    let mut eq = Equation::new(src.name, src.group, src.provenance, lhs, rhs)
        .unwrap_or_else(|e| panic!("{}: {e}", src.name));
    eq.original = src.original.map(str::to_string);
    eq
}

/// Upside-down and mirror images of `eq`, as named generated equations.
pub fn images(eq: &Equation) -> Vec<Equation> {
    let variants: [(&str, fn(&super::Term) -> super::Term); 3] = [
        ("dag", |t| t.dagger()),
        ("mir", |t| t.mirror()),
        ("dagmir", |t| t.dagger().mirror()),
    ];
    variants
        .iter()
        .map(|(suffix, f)| {
            Equation::new(
                &format!("{}_{suffix}", eq.name),
                &eq.group,
                Provenance::Generated,
                f(&eq.lhs),
                f(&eq.rhs),
            )
            .expect("images of typed equations are typed")
        })
        .collect()
}

/// The full shipped table, in rendering order.
pub fn equations() -> Vec<Equation> {
    let mut out: Vec<Equation> = Vec::new();
    for group in GROUPS {
        let stated: Vec<Equation> = SOURCE.iter().filter(|s| s.group == group).map(build).collect();
        let generated: Vec<Equation> = if group == "compat" {
            stated.iter().flat_map(images).collect()
        } else {
            Vec::new()
        };
        for eq in stated.into_iter().chain(generated) {
            if !out.iter().any(|e| e.group == eq.group && e.same_as(&eq)) {
                out.push(eq);
            }
        }
    }
    out
}

pub fn render() -> String {
    let mut text = String::from(
        "# Axioms for commutative Frobenius pairs with Moebius maps.\n\
         # Layers are read bottom to top; `;` composes, `(x)` tensors.\n\
         # Rendered by frobpair::theory::manifest::render.\n\
         version 1\n",
    );
    let eqs = equations();
    for group in GROUPS {
        text.push_str(&format!("\n# group {group}\n"));
        for eq in eqs.iter().filter(|e| e.group == group) {
            text.push_str(&format!("{eq}\n"));
        }
    }
    text
}

/// Parses the shipped file.
pub fn shipped() -> Theory {
    parse_theory(SHIPPED).expect("shipped manifest parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_file_matches_table() {
        let rendered = render();
        if std::env::var_os("FROBPAIR_BLESS").is_some() {
            let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/axioms.eq");
            std::fs::write(path, &rendered).unwrap();
            return;
        }
        assert_eq!(SHIPPED, rendered, "run with FROBPAIR_BLESS=1 to refresh data/axioms.eq");
    }

    #[test]
    fn shipped_round_trips() {
        assert_eq!(shipped().equations, equations());
    }

    #[test]
    fn compat_images_present() {
        let eqs = equations();
        let compat: Vec<_> = eqs.iter().filter(|e| e.group == "compat").collect();
        assert!(compat.len() > 3);
        assert!(compat.iter().any(|e| e.provenance == Provenance::Generated));
        let c1 = compat.iter().find(|e| e.name == "compat1").unwrap();
        let mir = images(c1).into_iter().find(|e| e.name == "compat1_mir").unwrap();
        assert_eq!(mir.rhs.to_string(), "(id_E (x) Delta_A) ; (mu_EA (x) id_A)");
    }

    #[test]
    fn every_group_nonempty() {
        let eqs = equations();
        for g in GROUPS {
            assert!(eqs.iter().any(|e| e.group == g), "{g}");
        }
        assert_eq!(eqs.iter().filter(|e| e.group == "frobA").count(), 12);
    }
}
