//! Canonical experiment presets.
//!
//! Each preset pins the exact parameter set of one standard scenario —
//! spectral sweeps, localization scans, resonant and second-order tunneling
//! runs, and frequency-validity maps — so tests and users invoke them by
//! name instead of re-typing parameters. A preset may expand to several
//! runs (the localization scans pair an on-collapse run with an off-collapse
//! one); every run is an ordinary entry list fed through the same config
//! builder as files and overrides.

use crate::config::{Entry, Source};

/// π/2, written out so the entry table stays plain strings: cos α = 0 at
/// this angle, i.e. purely spin-flipping hopping.
const ALPHA_FLIP: &str = "1.5707963267948966";

/// One run of a preset: its output stem comes from the `output` entry.
#[derive(Debug, Clone, Copy)]
pub struct RecipeRun {
    pub entries: &'static [(&'static str, &'static str)],
}

/// A named preset expanding to one or more runs.
#[derive(Debug, Clone, Copy)]
pub struct Recipe {
    pub name: &'static str,
    pub summary: &'static str,
    pub runs: &'static [RecipeRun],
}

impl Recipe {
    /// The entry lists of all runs, tagged with this preset as the source.
    pub fn run_entries(&self) -> Vec<Vec<Entry>> {
        self.runs
            .iter()
            .map(|run| {
                run.entries
                    .iter()
                    .map(|(k, v)| Entry::new(k, v, Source::Preset(self.name)))
                    .collect()
            })
            .collect()
    }
}

macro_rules! runs {
    ($([$(($k:literal, $v:expr)),* $(,)?]),* $(,)?) => {
        &[$(RecipeRun { entries: &[$(($k, $v)),*] }),*]
    };
}

/// All presets, in presentation order.
pub const RECIPES: &[Recipe] = &[
    Recipe {
        name: "figure1a",
        summary: "quasienergy spectrum vs F/omega, spin-conserving, resonant impurity",
        runs: runs![[
            ("mode", "spectrum"),
            ("alpha", "0"),
            ("epsilon0_over_omega", "1"),
            ("axis", "f_over_omega"),
            ("axis_min", "0"),
            ("axis_max", "8"),
            ("axis_points", "161"),
            ("output", "figure1a"),
        ]],
    },
    Recipe {
        name: "figure1b",
        summary: "quasienergy spectrum vs F/omega, spin-conserving, off-resonant impurity",
        runs: runs![[
            ("mode", "spectrum"),
            ("alpha", "0"),
            ("epsilon0_over_omega", "1.2"),
            ("axis", "f_over_omega"),
            ("axis_min", "0"),
            ("axis_max", "8"),
            ("axis_points", "161"),
            ("output", "figure1b"),
        ]],
    },
    Recipe {
        name: "figure1c",
        summary: "quasienergy spectrum vs F/omega, spin-flipping, resonant impurity",
        runs: runs![[
            ("mode", "spectrum"),
            ("alpha", ALPHA_FLIP),
            ("epsilon0_over_omega", "1"),
            ("axis", "f_over_omega"),
            ("axis_min", "0"),
            ("axis_max", "8"),
            ("axis_points", "161"),
            ("output", "figure1c"),
        ]],
    },
    Recipe {
        name: "figure1d",
        summary: "quasienergy spectrum vs F/omega, spin-flipping, off-resonant impurity",
        runs: runs![[
            ("mode", "spectrum"),
            ("alpha", ALPHA_FLIP),
            ("epsilon0_over_omega", "1.2"),
            ("axis", "f_over_omega"),
            ("axis_min", "0"),
            ("axis_max", "8"),
            ("axis_points", "161"),
            ("output", "figure1d"),
        ]],
    },
    Recipe {
        name: "figure2a",
        summary: "quasienergy spectrum vs epsilon0/omega, spin-conserving, at the first collapse",
        runs: runs![[
            ("mode", "spectrum"),
            ("alpha", "0"),
            ("f_over_omega", "2.4045"),
            ("axis", "epsilon0_over_omega"),
            ("axis_min", "0"),
            ("axis_max", "3"),
            ("axis_points", "121"),
            ("output", "figure2a"),
        ]],
    },
    Recipe {
        name: "figure2b",
        summary: "quasienergy spectrum vs epsilon0/omega, spin-flipping, at the first collapse",
        runs: runs![[
            ("mode", "spectrum"),
            ("alpha", ALPHA_FLIP),
            ("f_over_omega", "3.8317"),
            ("axis", "epsilon0_over_omega"),
            ("axis_min", "0"),
            ("axis_max", "3"),
            ("axis_points", "121"),
            ("output", "figure2b"),
        ]],
    },
    Recipe {
        name: "figure3a",
        summary: "mean-square displacement, spin-conserving, resonant: on vs off collapse",
        runs: runs![
            [
                ("mode", "evolve"),
                ("alpha", "0"),
                ("epsilon0_over_omega", "1"),
                ("f_over_omega", "2.405"),
                ("t_max", "50"),
                ("output", "figure3a_solid"),
            ],
            [
                ("mode", "evolve"),
                ("alpha", "0"),
                ("epsilon0_over_omega", "1"),
                ("f_over_omega", "1.5"),
                ("t_max", "50"),
                ("output", "figure3a_dashed"),
            ],
        ],
    },
    Recipe {
        name: "figure3b",
        summary: "mean-square displacement, spin-conserving, off-resonant: on vs off collapse",
        runs: runs![
            [
                ("mode", "evolve"),
                ("alpha", "0"),
                ("epsilon0_over_omega", "1.2"),
                ("f_over_omega", "2.405"),
                ("t_max", "50"),
                ("output", "figure3b_solid"),
            ],
            [
                ("mode", "evolve"),
                ("alpha", "0"),
                ("epsilon0_over_omega", "1.2"),
                ("f_over_omega", "1.5"),
                ("t_max", "50"),
                ("output", "figure3b_dashed"),
            ],
        ],
    },
    Recipe {
        name: "figure3c",
        summary: "mean-square displacement, spin-flipping, resonant: on vs off collapse",
        runs: runs![
            [
                ("mode", "evolve"),
                ("alpha", ALPHA_FLIP),
                ("epsilon0_over_omega", "1"),
                ("f_over_omega", "3.8317"),
                ("t_max", "50"),
                ("output", "figure3c_solid"),
            ],
            [
                ("mode", "evolve"),
                ("alpha", ALPHA_FLIP),
                ("epsilon0_over_omega", "1"),
                ("f_over_omega", "1.5"),
                ("t_max", "50"),
                ("output", "figure3c_dashed"),
            ],
        ],
    },
    Recipe {
        name: "figure3d",
        summary: "mean-square displacement, spin-flipping, off-resonant: on vs off collapse",
        runs: runs![
            [
                ("mode", "evolve"),
                ("alpha", ALPHA_FLIP),
                ("epsilon0_over_omega", "1.2"),
                ("f_over_omega", "3.8317"),
                ("t_max", "50"),
                ("output", "figure3d_solid"),
            ],
            [
                ("mode", "evolve"),
                ("alpha", ALPHA_FLIP),
                ("epsilon0_over_omega", "1.2"),
                ("f_over_omega", "1.5"),
                ("t_max", "50"),
                ("output", "figure3d_dashed"),
            ],
        ],
    },
    Recipe {
        name: "figure4a",
        summary: "resonant three-site oscillation, spin-conserving collapse",
        runs: runs![[
            ("mode", "evolve"),
            ("alpha", "0"),
            ("epsilon0_over_omega", "1"),
            ("f_over_omega", "2.405"),
            ("t_max", "100"),
            ("output", "figure4a"),
        ]],
    },
    Recipe {
        name: "figure4b",
        summary: "resonant three-site oscillation with spin flip, spin-flipping collapse",
        runs: runs![[
            ("mode", "evolve"),
            ("alpha", ALPHA_FLIP),
            ("epsilon0_over_omega", "1"),
            ("f_over_omega", "3.8317"),
            ("t_max", "100"),
            ("output", "figure4b"),
        ]],
    },
    Recipe {
        name: "figure5a",
        summary: "second-order edge-to-edge oscillation vs slow-mode prediction, spin-conserving",
        runs: runs![[
            ("mode", "effective"),
            ("alpha", "0"),
            ("epsilon0_over_omega", "1.2"),
            ("f_over_omega", "2.405"),
            ("t_max", "100"),
            ("output", "figure5a"),
        ]],
    },
    Recipe {
        name: "figure5b",
        summary: "second-order edge-to-edge oscillation vs slow-mode prediction, spin-flipping",
        runs: runs![[
            ("mode", "effective"),
            ("alpha", ALPHA_FLIP),
            ("epsilon0_over_omega", "1.2"),
            ("f_over_omega", "3.8317"),
            ("t_max", "100"),
            ("output", "figure5b"),
        ]],
    },
    Recipe {
        name: "figure6a",
        summary: "numeric vs closed-form quasienergies near the spin-conserving collapse",
        runs: runs![[
            ("mode", "spectrum"),
            ("alpha", "0"),
            ("epsilon0_over_omega", "1.2"),
            ("axis", "f_over_omega"),
            ("axis_min", "2.005"),
            ("axis_max", "2.805"),
            ("axis_points", "17"),
            ("analytic_levels", "true"),
            ("output", "figure6a"),
        ]],
    },
    Recipe {
        name: "figure6b",
        summary: "numeric vs closed-form quasienergies near the spin-flipping collapse",
        runs: runs![[
            ("mode", "spectrum"),
            ("alpha", ALPHA_FLIP),
            ("epsilon0_over_omega", "1.2"),
            ("axis", "f_over_omega"),
            ("axis_min", "3.4317"),
            ("axis_max", "4.2317"),
            ("axis_points", "17"),
            ("analytic_levels", "true"),
            ("output", "figure6b"),
        ]],
    },
    Recipe {
        name: "figure7a",
        summary: "validity map S1/S2 vs omega, spin-conserving collapse drive",
        runs: runs![[
            ("mode", "validity"),
            ("alpha", "0"),
            ("epsilon0_over_omega", "1.2"),
            ("zeeman_over_omega", "1"),
            ("f_over_omega", "2.405"),
            ("omega_min", "4"),
            ("omega_max", "24"),
            ("omega_points", "6"),
            ("window", "200"),
            // Double resolution: ~760 periods accumulate at the top of the
            // frequency grid, and the norm-drift budget is per run.
            ("steps_per_period", "32768"),
            ("output", "figure7a"),
        ]],
    },
    Recipe {
        name: "figure7b",
        summary: "validity map S1/S2 vs omega, spin-flipping collapse drive",
        runs: runs![[
            ("mode", "validity"),
            ("alpha", ALPHA_FLIP),
            ("epsilon0_over_omega", "1.2"),
            ("zeeman_over_omega", "1"),
            ("f_over_omega", "3.8317"),
            ("omega_min", "4"),
            ("omega_max", "24"),
            ("omega_points", "6"),
            ("window", "200"),
            ("steps_per_period", "32768"),
            ("output", "figure7b"),
        ]],
    },
];

/// Finds a preset by name.
pub fn lookup(name: &str) -> Option<&'static Recipe> {
    RECIPES.iter().find(|r| r.name == name)
}

/// All preset names, for error messages and documentation.
pub fn names() -> Vec<&'static str> {
    RECIPES.iter().map(|r| r.name).collect()
}
