//! Method catalog: one entry per scheme with its origin, trial/test spaces,
//! initial-condition treatment, expected convergence rates, and the
//! acceptance checks that exercise it, plus the ledger of algebraic identity
//! checks. The markdown in `docs/method_catalog.md` is generated from the
//! same tables the test suite reads, so the two cannot drift apart.

use crate::methods::Scheme;

/// Rate entry: `tau`-order is `q + tau_offset`, `h`-order is `p + h_offset`.
#[derive(Debug, Clone, Copy)]
pub struct RateRow {
    pub label: &'static str,
    pub tau_offset: i32,
    pub h_offset: i32,
}

/// Expected convergence rates per scheme, shared by the catalog and the
/// convergence acceptance tests.
pub fn rate_table(scheme: Scheme) -> Vec<RateRow> {
    match scheme {
        Scheme::HeatJamet => vec![
            RateRow {
                label: "u in Linf(0,T; L2)",
                tau_offset: 1,
                h_offset: 1,
            },
            RateRow {
                label: "grad u in L2(Q_T) (nu-weighted)",
                tau_offset: 1,
                h_offset: 0,
            },
        ],
        Scheme::HeatAzizMonk => vec![
            RateRow {
                label: "u in C0([0,T]; L2)",
                tau_offset: 1,
                h_offset: 1,
            },
            RateRow {
                label: "grad (truncated u) in L2(Q_T)",
                tau_offset: 1,
                h_offset: 0,
            },
        ],
        Scheme::WaveVanilla => vec![
            RateRow {
                label: "d_t u in Linf(0,T; L2)",
                tau_offset: 0,
                h_offset: 1,
            },
            RateRow {
                label: "grad u in Linf(0,T; L2)",
                tau_offset: 1,
                h_offset: 0,
            },
        ],
        Scheme::WaveFrenchPeterson => vec![
            RateRow {
                label: "v in C0([0,T]; L2)",
                tau_offset: 1,
                h_offset: 1,
            },
            RateRow {
                label: "grad u in C0([0,T]; L2)",
                tau_offset: 1,
                h_offset: 0,
            },
        ],
        Scheme::WaveJohnson => vec![
            RateRow {
                label: "v in Linf(0,T; L2)",
                tau_offset: 1,
                h_offset: 1,
            },
            RateRow {
                label: "grad u in Linf(0,T; L2)",
                tau_offset: 1,
                h_offset: 0,
            },
        ],
        Scheme::WaveWalkington => vec![
            RateRow {
                label: "d_t u in Linf(0,T; L2)",
                tau_offset: 0,
                h_offset: 1,
            },
            RateRow {
                label: "grad u in Linf(0,T; L2)",
                tau_offset: 1,
                h_offset: 0,
            },
        ],
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub scheme: Scheme,
    pub origin: &'static str,
    pub trial_space: &'static str,
    pub test_space: &'static str,
    pub initial_conditions: &'static str,
    pub time_step_constraint: &'static str,
    /// Acceptance check ids exercised by this scheme (exactness + convergence).
    pub acceptance_ids: Vec<&'static str>,
}

pub fn catalog_entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            scheme: Scheme::HeatJamet,
            origin: "DG time stepping for parabolic problems (Jamet 1978)",
            trial_space: "broken P_q in time, conforming P_p in space",
            test_space: "broken P_q",
            initial_conditions: "weak, through the bottom-surface term (raw L2 load of u0)",
            time_step_constraint: "none (unconditionally solvable)",
            acceptance_ids: vec!["X-heat-jamet", "C13"],
        },
        CatalogEntry {
            scheme: Scheme::HeatAzizMonk,
            origin: "CG time stepping for parabolic problems (Aziz & Monk 1989)",
            trial_space: "continuous P_q in time (q >= 1), conforming P_p in space",
            test_space: "broken P_{q-1}",
            initial_conditions: "strong, u(0) = L2 projection of u0",
            time_step_constraint: "none (unconditionally solvable)",
            acceptance_ids: vec!["X-heat-aziz-monk", "C14"],
        },
        CatalogEntry {
            scheme: Scheme::WaveVanilla,
            origin: "single-field DG for second-order waves (Hughes & Hulbert 1988); damped variant after Antonietti, Mazzieri & Migliorini 2020",
            trial_space: "broken P_q in time (q >= 2), conforming P_p in space",
            test_space: "d/dt of broken P_q (plus gradient jump coupling)",
            initial_conditions: "weak, bottom-surface terms carrying v0 and grad u0",
            time_step_constraint: "CFL: tau <= C_cfl h_min / c (configurable constant)",
            acceptance_ids: vec!["X-wave-vanilla", "C15", "C19"],
        },
        CatalogEntry {
            scheme: Scheme::WaveFrenchPeterson,
            origin: "CG for the Hamiltonian wave system (French & Peterson 1991)",
            trial_space: "two continuous P_q fields (q >= 1), conforming P_p in space",
            test_space: "broken P_{q-1} for both equations",
            initial_conditions: "strong, u(0) = Ritz projection of u0, v(0) = L2 projection of v0",
            time_step_constraint: "none (unconditionally solvable)",
            acceptance_ids: vec!["X-wave-french-peterson", "C16"],
        },
        CatalogEntry {
            scheme: Scheme::WaveJohnson,
            origin: "DG for the Hamiltonian wave system (Johnson 1993)",
            trial_space: "two broken P_q fields (q >= 1), conforming P_p in space",
            test_space: "broken P_q for both equations",
            initial_conditions: "weak, bottom-surface terms carrying v0 and grad u0",
            time_step_constraint: "none: no constraint relating tau and h is required",
            acceptance_ids: vec!["X-wave-johnson", "C17"],
        },
        CatalogEntry {
            scheme: Scheme::WaveWalkington,
            origin: "DG-CG for second-order waves (Walkington 2014)",
            trial_space: "continuous P_q in time (q >= 2), conforming P_p in space",
            test_space: "broken P_{q-1}",
            initial_conditions: "strong u(0) = Ritz projection of u0; v0 enters weakly",
            time_step_constraint: "none (unconditionally solvable)",
            acceptance_ids: vec!["X-wave-walkington", "C18"],
        },
    ]
}

/// Ledger of algebraic identity checks (ids `I1`..`I12`), mirroring
/// `verify::run_identity_suite` in order.
pub fn identity_ledger() -> Vec<(&'static str, &'static str)> {
    vec![
        ("I1", "Legendre orthogonality on slabs: int L_i L_j dt = tau/(2i+1) delta_ij"),
        ("I2", "left Gauss-Radau rule with q+1 points is exact to degree 2q and strictly fails at 2q+1"),
        ("I3", "slab weight integration identities (continuous and broken forms)"),
        ("I4", "exact value tau (q-1)/(2q-1) of the truncation/weight integral, zero at q = 1"),
        ("I5", "exact value tau^2 q / (2(2q-1)^2) of the one-sided-projection/weight integral"),
        ("I6", "left-sided degree-(q-1) projection maps L_q to -L_{q-1}"),
        ("I7", "reconstruction energy identity for random broken fields"),
        ("I8", "orthogonality chain of the reconstructed one-sided projection on smooth inputs"),
        ("I9", "polynomial inverse estimate with constant (q+1)^3, with a non-vacuousness witness"),
        ("I10", "endpoint trace bound for the truncated Walkington-weighted field"),
        ("I11", "two-field CG velocity reduction: truncated v equals d_t u on solved instances"),
        ("I12", "weak energy bounds with homogeneous forcing for all six schemes"),
    ]
}

fn order_label(base: char, offset: i32) -> String {
    match offset {
        0 => format!("{base}^q").replace('q', if base == 'h' { "p" } else { "q" }),
        _ => {
            let var = if base == 'h' { "p" } else { "q" };
            if offset >= 0 {
                format!("{base}^({var}+{offset})")
            } else {
                format!("{base}^({var}{offset})")
            }
        }
    }
}

/// Renders the full catalog as markdown.
pub fn render_catalog() -> String {
    let mut out = String::new();
    out.push_str("# Method catalog\n\n");
    out.push_str(
        "One section per scheme: origin, discrete spaces, initial-condition \
         treatment, time-step constraint, expected convergence rates, and the \
         acceptance checks covering it. Generated by `cargo run --example \
         gen_catalog`; the test suite reads the same tables.\n\n",
    );
    for entry in catalog_entries() {
        out.push_str(&format!("## `{}`\n\n", entry.scheme.name()));
        out.push_str(&format!("- **Origin:** {}\n", entry.origin));
        out.push_str(&format!("- **Trial space:** {}\n", entry.trial_space));
        out.push_str(&format!("- **Test space:** {}\n", entry.test_space));
        out.push_str(&format!(
            "- **Initial conditions:** {}\n",
            entry.initial_conditions
        ));
        out.push_str(&format!(
            "- **Time-step constraint:** {}\n",
            entry.time_step_constraint
        ));
        out.push_str(&format!(
            "- **Acceptance checks:** {}\n\n",
            entry
                .acceptance_ids
                .iter()
                .map(|id| format!("`{id}`"))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        out.push_str("| error quantity | h-order | tau-order |\n");
        out.push_str("|---|---|---|\n");
        for row in rate_table(entry.scheme) {
            out.push_str(&format!(
                "| {} | {} | {} |\n",
                row.label,
                order_label('h', row.h_offset),
                order_label('t', row.tau_offset).replace("t^", "tau^"),
            ));
        }
        out.push('\n');
    }
    out.push_str("## Identity-check ledger\n\n");
    out.push_str("| id | relation checked |\n|---|---|\n");
    for (id, desc) in identity_ledger() {
        out.push_str(&format!("| `{id}` | {desc} |\n"));
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_acceptance_id_appears_exactly_once() {
        let text = render_catalog();
        let mut ids: Vec<String> = catalog_entries()
            .iter()
            .flat_map(|e| e.acceptance_ids.iter().map(|s| s.to_string()))
            .collect();
        ids.extend(identity_ledger().iter().map(|(id, _)| id.to_string()));
        for id in &ids {
            let needle = format!("`{id}`");
            let count = text.matches(&needle).count();
            assert_eq!(count, 1, "id {id} appears {count} times");
        }
        // Ids are pairwise distinct.
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
    }

    #[test]
    fn walkington_and_jamet_rows_match_expected_rates() {
        let rows = rate_table(Scheme::WaveWalkington);
        assert_eq!(rows[0].tau_offset, 0, "velocity converges at order q");
        assert_eq!(rows[1].tau_offset, 1, "gradient converges at order q+1");
        let rows = rate_table(Scheme::HeatJamet);
        assert_eq!(rows[0].tau_offset, 1);
        assert_eq!(rows[0].h_offset, 1);
        // The DG Hamiltonian scheme carries no time-step constraint.
        let johnson = catalog_entries()
            .into_iter()
            .find(|e| e.scheme == Scheme::WaveJohnson)
            .unwrap();
        assert!(johnson.time_step_constraint.contains("no constraint"));
    }
}
