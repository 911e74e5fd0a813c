use taskgrowth::*;

fn inf_physical(beta: f64) -> Scenario {
    let mut s = Scenario::reference().with_physical_cost(AutomationCost::INFINITE);
    s.production = ProductionSpec::cobb_douglas(beta).unwrap();
    s
}

#[test]
fn table_rows() {
    let s = Scenario::reference();
    let t_star = cognitive_automation_time(&s).years().unwrap();
    let traj = simulate(&s, &[0.0, t_star, 100.0]).unwrap();
    let flags: Vec<(bool, bool)> = traj
        .iter()
        .map(|p| (p.flags.cognitive, p.flags.physical))
        .collect();
    assert_eq!(flags, vec![(false, false), (true, false), (true, true)]);
    assert!(traj.iter().all(|p| p.flags.agree()));
    assert!((traj[1].result.labor_share - 0.5).abs() <= 1e-9);
    assert!((traj[1].q / 1e23 - 1.0).abs() <= 1e-12);
}

#[test]
fn literal_eleven_and_a_half_is_just_before_automation() {
    // Q(11.5) = 1e22 e^2.3 = 9.974e22 < alpha_c L, so a sliver of labor
    // stays in cognitive work and the share sits slightly above one half.
    let p = &simulate(&Scenario::reference(), &[11.5]).unwrap()[0];
    assert!(!p.flags.cognitive && !p.flags.threshold_cognitive);
    let x_p = 0.5 * (1e9 + p.q / 1e14);
    let expected = 0.5 * 1e9 / x_p;
    assert!((p.result.labor_share - expected).abs() <= 1e-12);
    assert!(p.result.labor_share > 0.5 && p.result.labor_share < 0.501);
}

#[test]
fn share_is_exponent_between_thresholds() {
    let s = Scenario::reference();
    let tc = cognitive_automation_time(&s).years().unwrap();
    let tp = physical_automation_time(&s).years().unwrap();
    let grid = uniform_grid(0.0, 150.0, 0.25).unwrap();
    let traj = simulate(&s, &grid).unwrap();
    let mut prev = f64::INFINITY;
    for p in &traj {
        assert!(p.result.labor_share <= prev + 1e-9, "t = {}", p.t);
        prev = p.result.labor_share;
        if p.t >= tc && p.t < tp {
            assert!((p.result.labor_share - 0.5).abs() <= 1e-12, "t = {}", p.t);
        }
    }
}

#[test]
fn infinite_physical_cost_converges_to_beta() {
    for beta in [0.2, 0.5, 0.7] {
        let s = inf_physical(beta);
        let tc = cognitive_automation_time(&s).years().unwrap();
        let grid: Vec<f64> = uniform_grid(0.0, 300.0, 0.5)
            .unwrap()
            .into_iter()
            .filter(|&t| t >= tc)
            .collect();
        for p in simulate(&s, &grid).unwrap() {
            assert!(
                (p.result.labor_share - beta).abs() <= 1e-6,
                "beta {beta} t {}",
                p.t
            );
        }
        let v = asymptotic_labor_share(&s).unwrap();
        assert_eq!(v.limiting_labor_share.value(), Some(beta));
    }
}

#[test]
fn asymptotic_verdicts_match_long_simulation() {
    let s = inf_physical(0.5);
    let at500 = simulate(&s, &[500.0]).unwrap()[0].result.labor_share;
    let v = asymptotic_labor_share(&s)
        .unwrap()
        .limiting_labor_share
        .value()
        .unwrap();
    assert!((at500 - v).abs() <= 1e-6);

    let s = Scenario::reference();
    let at500 = simulate(&s, &[500.0]).unwrap()[0].result.labor_share;
    assert!(at500 <= 1e-3);
    assert_eq!(
        asymptotic_labor_share(&s)
            .unwrap()
            .limiting_labor_share
            .value(),
        Some(0.0)
    );
}

#[test]
fn growth_rate_matches_decomposition_after_cognitive_automation() {
    let s = Scenario::reference();
    let traj = simulate(&s, &uniform_grid(20.0, 80.0, 0.1).unwrap()).unwrap();
    let closed = growth_decomposition(0.5, 0.2, 0.0, 0.0);
    for (t, g) in numeric_growth_rate(&traj).unwrap() {
        assert!((g - closed).abs() <= 1e-3, "t {t}: {g}");
    }
}

#[test]
fn growth_decomposition_with_labor_and_augmentation() {
    let mut s = inf_physical(0.3);
    s.compute_path = ComputePath::exponential(1e26, 0.1).unwrap();
    s.growth.labor = 0.01;
    s.growth.labor_augmenting = 0.02;
    let traj = simulate(&s, &uniform_grid(10.0, 40.0, 0.1).unwrap()).unwrap();
    assert!(traj.iter().all(|p| p.flags.cognitive));
    let closed = growth_decomposition(0.3, 0.1, 0.01, 0.02);
    for (t, g) in numeric_growth_rate(&traj).unwrap() {
        assert!((g - closed).abs() <= 1e-6, "t {t}: {g}");
    }
}

#[test]
fn pre_automation_growth_is_partial() {
    let traj = simulate(
        &Scenario::reference(),
        &uniform_grid(0.0, 5.0, 0.1).unwrap(),
    )
    .unwrap();
    for (t, g) in numeric_growth_rate(&traj).unwrap() {
        assert!(g > 0.0 && g < 0.1, "t {t}: {g}");
    }
}

#[test]
fn stationary_economy_has_zero_growth() {
    let mut s = Scenario::reference();
    s.compute_path = ComputePath::exponential(1e22, 0.0).unwrap();
    let traj = simulate(&s, &uniform_grid(0.0, 10.0, 1.0).unwrap()).unwrap();
    for (_, g) in numeric_growth_rate(&traj).unwrap() {
        assert_eq!(g, 0.0);
    }
}

#[test]
fn bounded_compute_keeps_labor_share() {
    let mut s = Scenario::reference();
    s.compute_path = ComputePath::bounded(1e22, 1e29, 0.1).unwrap();
    assert!(persistence_check(
        s.tasks.physical().cost,
        s.labor_supply,
        1e29
    ));
    let traj = simulate(&s, &uniform_grid(0.0, 400.0, 10.0).unwrap()).unwrap();
    assert!(traj
        .iter()
        .all(|p| !p.flags.physical && p.result.labor_share >= 0.5 - 1e-12));
    assert!(traj
        .iter()
        .filter(|p| p.flags.cognitive)
        .all(|p| p.result.allocation.labor_physical == 1e9));
    assert!((traj.last().unwrap().result.labor_share - 0.5).abs() <= 1e-12);
    let v = asymptotic_labor_share(&s).unwrap();
    assert_eq!(v.regime, Regime::FiniteCompute);
    assert!((v.limiting_labor_share.value().unwrap() - 0.5).abs() <= 1e-12);
}

#[test]
fn simulation_is_deterministic() {
    let grid = uniform_grid(0.0, 120.0, 0.5).unwrap();
    let a = simulate(&Scenario::reference(), &grid).unwrap();
    let b = simulate(&Scenario::reference(), &grid).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.result.output.to_bits(), y.result.output.to_bits());
        assert_eq!(
            x.result.labor_share.to_bits(),
            y.result.labor_share.to_bits()
        );
    }
    // Evaluating a single point gives the same bits as inside a grid.
    let lone = simulate(&Scenario::reference(), &[grid[37]]).unwrap();
    assert_eq!(lone[0].result.wage.to_bits(), a[37].result.wage.to_bits());
}
