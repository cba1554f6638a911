//! Behavior of the layered `key = value` configuration language: defaults,
//! precedence, conflict detection, and line-accurate error reporting.

use floquet_lattice::floquet::SweepAxis;
use floquet_lattice::lattice::Spin;
use num_complex::Complex64 as C64;
use sim_cli::config::{
    build, file_entries, override_entries, parse_config, Entry, InitialState, RunSpec, Scaled,
    Source,
};

#[test]
fn empty_text_yields_the_full_default_experiment() {
    let cfg = parse_config("").unwrap();
    assert_eq!(cfg.params.n_sites, 21);
    assert_eq!(cfg.params.hopping, 1.0);
    assert_eq!(cfg.params.soc_angle, 0.0);
    assert_eq!(cfg.params.drive_frequency, 20.0);
    assert_eq!(cfg.params.zeeman, 20.0);
    assert_eq!(cfg.params.impurity, 20.0);
    assert!((cfg.params.drive_amplitude - 48.1).abs() < 1e-12);
    assert!(cfg.params.is_spin_conserving());
    assert_eq!(cfg.integrator.steps_per_period(), 16384);
    assert_eq!(cfg.integrator.samples_per_period(), 64);
    assert_eq!(
        cfg.initial,
        InitialState::Basis {
            site: -1,
            spin: Spin::Up
        }
    );
    assert_eq!(cfg.run, RunSpec::Evolve { t_max: 100.0 });
    assert_eq!(cfg.track_sites, vec![-1, 0, 1]);
    assert_eq!(cfg.output, "evolve");
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let cfg = parse_config("# a comment\n\n  t_max = 7.5   # trailing note\n").unwrap();
    assert_eq!(cfg.run, RunSpec::Evolve { t_max: 7.5 });
}

#[test]
fn right_angle_spin_orbit_coupling_routes_to_the_flipping_chain() {
    let cfg = parse_config("alpha = 1.5707963267948966\n").unwrap();
    assert!(cfg.params.is_spin_flipping());
    assert!(!cfg.params.is_spin_conserving());
}

#[test]
fn even_site_count_is_rejected_with_its_line_number() {
    let err = parse_config("n_sites = 20\n").unwrap_err().to_string();
    assert!(err.contains("line 1"), "missing location in: {err}");
    assert!(err.contains("odd"), "missing reason in: {err}");
}

#[test]
fn unknown_keys_are_rejected() {
    let err = parse_config("t_mx = 50\n").unwrap_err().to_string();
    assert!(err.contains("unknown key `t_mx`"), "got: {err}");
    assert!(err.contains("line 1"), "got: {err}");
}

#[test]
fn unparsable_numbers_point_at_their_line() {
    let err = parse_config("omega = 20\nt_max = soon\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("line 2"), "got: {err}");
    assert!(err.contains("expects a number"), "got: {err}");
}

#[test]
fn non_finite_numbers_are_rejected() {
    let err = parse_config("t_max = inf\n").unwrap_err().to_string();
    assert!(err.contains("finite"), "got: {err}");
}

#[test]
fn malformed_lines_are_rejected() {
    let err = file_entries("n_sites 21\n").unwrap_err().to_string();
    assert!(err.contains("expected `key = value`"), "got: {err}");

    let err = file_entries(" = 5\n").unwrap_err().to_string();
    assert!(err.contains("missing key"), "got: {err}");

    let err = file_entries("t_max =\n").unwrap_err().to_string();
    assert!(err.contains("empty value"), "got: {err}");
}

#[test]
fn duplicate_keys_in_one_file_conflict() {
    let err = parse_config("t_max = 10\nt_max = 20\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("duplicate key `t_max`"), "got: {err}");
    assert!(err.contains("line 1"), "got: {err}");
    assert!(err.contains("line 2"), "got: {err}");
}

#[test]
fn two_forms_of_one_quantity_in_one_layer_conflict() {
    let err = parse_config("epsilon0 = 24\nepsilon0_over_omega = 1.2\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("conflicts with"), "got: {err}");

    let err = parse_config("initial_site = 0\ninitial_amplitudes = 1:0\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("conflicts with"), "got: {err}");
}

#[test]
fn a_later_layer_replaces_the_whole_quantity_group() {
    // A preset gives the impurity as a ratio; an override re-pins it in
    // absolute units. The override must win and the ratio must be dropped,
    // not combined into a conflict.
    let entries = vec![
        Entry::new("epsilon0_over_omega", "1.2", Source::Preset("demo")),
        Entry::new("epsilon0", "30", Source::Override(1)),
    ];
    let cfg = build(&entries).unwrap();
    assert_eq!(cfg.params.impurity, 30.0);
    assert_eq!(cfg.scaling.epsilon0, Scaled::Absolute(30.0));

    // And the reverse direction: file ratio over preset absolute.
    let entries = vec![
        Entry::new("zeeman", "17", Source::Preset("demo")),
        Entry::new("zeeman_over_omega", "1", Source::Line(1)),
    ];
    let cfg = build(&entries).unwrap();
    assert_eq!(cfg.params.zeeman, 20.0);
    assert_eq!(cfg.scaling.zeeman, Scaled::RatioToOmega(1.0));
}

#[test]
fn later_layers_override_earlier_ones_per_key() {
    let entries = vec![
        Entry::new("t_max", "10", Source::Preset("demo")),
        Entry::new("t_max", "50", Source::Line(3)),
        Entry::new("t_max", "75", Source::Override(1)),
    ];
    let cfg = build(&entries).unwrap();
    assert_eq!(cfg.run, RunSpec::Evolve { t_max: 75.0 });
}

#[test]
fn explicit_amplitudes_are_parsed_normalized_and_length_checked() {
    // 42 amplitudes for the default 21-site chain; weight split between
    // two states with a tiny normalization slack that must be rescaled.
    let mut parts = vec!["0:0".to_string(); 42];
    parts[0] = "0.6:0".to_string();
    parts[1] = "0:0.8".to_string();
    let text = format!("initial_amplitudes = {}\n", parts.join(", "));
    let cfg = parse_config(&text).unwrap();
    match &cfg.initial {
        InitialState::Amplitudes(amps) => {
            assert_eq!(amps.len(), 42);
            assert!((amps[0] - C64::new(0.6, 0.0)).norm() < 1e-12);
            assert!((amps[1] - C64::new(0.0, 0.8)).norm() < 1e-12);
        }
        other => panic!("expected amplitudes, got {other:?}"),
    }
    let psi = cfg.initial_state();
    assert!((psi.norm() - 1.0).abs() < 1e-12);

    let err = parse_config("initial_amplitudes = 1:0, 0:0\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("42"), "got: {err}");

    let err = parse_config("initial_amplitudes = 1.0\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("re:im"), "got: {err}");

    let mut parts = vec!["0:0".to_string(); 42];
    parts[0] = "0.5:0".to_string();
    let text = format!("initial_amplitudes = {}\n", parts.join(","));
    let err = parse_config(&text).unwrap_err().to_string();
    assert!(err.contains("normalize"), "got: {err}");
}

#[test]
fn basis_initial_states_must_sit_inside_the_chain() {
    let cfg = parse_config("initial_site = 10\ninitial_spin = down\n").unwrap();
    assert_eq!(
        cfg.initial,
        InitialState::Basis {
            site: 10,
            spin: Spin::Down
        }
    );

    let err = parse_config("initial_site = 11\n").unwrap_err().to_string();
    assert!(err.contains("outside the chain"), "got: {err}");

    let err = parse_config("initial_spin = sideways\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("`up` or `down`"), "got: {err}");
}

#[test]
fn nonpositive_t_max_is_rejected() {
    let err = parse_config("t_max = 0\n").unwrap_err().to_string();
    assert!(err.contains("t_max must be positive"), "got: {err}");
}

#[test]
fn spectrum_mode_reads_the_axis_and_grid() {
    let cfg = parse_config(
        "mode = spectrum\naxis = epsilon0_over_omega\naxis_min = 0\naxis_max = 3\naxis_points = 121\n",
    )
    .unwrap();
    assert_eq!(
        cfg.run,
        RunSpec::SpectrumSweep {
            axis: SweepAxis::ImpurityRatio,
            range: (0.0, 3.0),
            points: 121,
            analytic_levels: false,
        }
    );
    assert_eq!(cfg.output, "spectrum");

    let err = parse_config("mode = spectrum\naxis = drive\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("axis expects"), "got: {err}");

    let err = parse_config("mode = spectrum\naxis_min = 2\naxis_max = 1\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("axis_max > axis_min"), "got: {err}");

    let err = parse_config("mode = spectrum\naxis_min = -1\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("cannot go negative"), "got: {err}");
}

#[test]
fn validity_mode_needs_ratio_form_energies() {
    let cfg = parse_config("mode = validity\nzeeman_over_omega = 1\n").unwrap();
    assert_eq!(
        cfg.run,
        RunSpec::ValiditySweep {
            omega_range: (4.0, 24.0),
            points: 6,
            window: 200.0,
        }
    );

    let err = parse_config("mode = validity\nepsilon0 = 24\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("as a ratio"), "got: {err}");
    assert!(err.contains("epsilon0_over_omega"), "got: {err}");

    let err = parse_config("mode = validity\ndrive_amplitude = 48.1\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("f_over_omega"), "got: {err}");
}

#[test]
fn track_sites_are_validated_against_the_chain() {
    let cfg = parse_config("track_sites = -10, 0, 10\n").unwrap();
    assert_eq!(cfg.track_sites, vec![-10, 0, 10]);

    let err = parse_config("track_sites = 0, 11\n").unwrap_err().to_string();
    assert!(err.contains("outside the chain"), "got: {err}");

    let err = parse_config("track_sites = 0, 0\n").unwrap_err().to_string();
    assert!(err.contains("twice"), "got: {err}");

    let err = parse_config("track_sites = east\n").unwrap_err().to_string();
    assert!(err.contains("expects integers"), "got: {err}");
}

#[test]
fn output_stems_reject_path_like_or_flag_like_names() {
    let cfg = parse_config("output = run-3.final\n").unwrap();
    assert_eq!(cfg.output, "run-3.final");

    for bad in ["a/b", "-dash", "sp ace"] {
        let err = parse_config(&format!("output = {bad}\n"))
            .unwrap_err()
            .to_string();
        assert!(err.contains("file stem"), "for `{bad}` got: {err}");
    }
}

#[test]
fn override_tokens_must_come_in_flag_value_pairs() {
    let entries =
        override_entries(&["--t_max".into(), "12".into(), "--alpha".into(), "0".into()]).unwrap();
    assert_eq!(entries.len(), 2);
    assert_eq!(entries[0].key, "t_max");
    assert_eq!(entries[0].value, "12");
    assert_eq!(entries[0].source, Source::Override(1));
    assert_eq!(entries[1].source, Source::Override(2));

    let err = override_entries(&["--t_max".into()]).unwrap_err().to_string();
    assert!(err.contains("missing its value"), "got: {err}");

    let err = override_entries(&["t_max".into(), "12".into()])
        .unwrap_err()
        .to_string();
    assert!(err.contains("expected an override flag"), "got: {err}");
}

#[test]
fn inactive_mode_keys_are_still_type_checked() {
    // `axis_points` belongs to spectrum/chi runs, but a typo in it should
    // not pass silently just because the mode is evolve.
    let err = parse_config("mode = evolve\naxis_points = many\n")
        .unwrap_err()
        .to_string();
    assert!(err.contains("axis_points"), "got: {err}");
}

#[test]
fn unknown_mode_is_rejected_with_the_valid_choices() {
    let err = parse_config("mode = simulate\n").unwrap_err().to_string();
    assert!(err.contains("unknown mode"), "got: {err}");
    assert!(err.contains("evolve"), "got: {err}");
}

#[test]
fn integrator_settings_flow_through_validation() {
    let cfg = parse_config("steps_per_period = 512\nsamples_per_period = 32\n").unwrap();
    assert_eq!(cfg.integrator.steps_per_period(), 512);
    assert_eq!(cfg.integrator.samples_per_period(), 32);

    let err = parse_config("steps_per_period = 0\n").unwrap_err().to_string();
    assert!(err.contains("line 1"), "got: {err}");
}
