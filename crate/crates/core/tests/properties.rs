mod common;

use common::*;
use proptest::prelude::*;

use seatweight::harness::{parse_instance, LabeledInstance};
use seatweight::solvers::{brute_force, Predicate};
use seatweight::{
    check_house_monotonicity, find_by_dp, reachable_weights, two_party_construct, Axiom,
    AxiomChecker, ClassicMethod, DivisorFamily, DpTarget, Fraction, HmMode, Limits, Method,
    QuotaTable, SeatAssignment, SolveStatus, TieBreak, Witness,
};

const CAP: u64 = Limits::DEFAULT_BRUTE_FORCE_ASSIGNMENTS;

fn all_methods() -> Vec<Method> {
    vec![
        Method::ADAMS_W,
        Method::DHONDT_W,
        Method::Divisor(DivisorFamily::Generic(Fraction::new(1, 2))),
        Method::Greedy,
        Method::Classic(ClassicMethod::Adams),
        Method::Classic(ClassicMethod::DHondt),
        Method::Classic(ClassicMethod::Lrm),
    ]
}

fn divisor_methods() -> Vec<Method> {
    all_methods().into_iter().filter(|m| m.is_divisor()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn reachable_sets_match_subset_enumeration(
        inst in instances(1..=1, 1..=12, 20, 1),
        cap_frac in 0.0f64..=1.0,
    ) {
        let cap = (cap_frac * inst.num_seats() as f64).round() as usize;
        let set = reachable_weights(&inst, cap).unwrap();
        prop_assert_eq!(set.iter().collect::<Vec<_>>(), subset_sums(&inst, cap));
    }

    #[test]
    fn quota_table_matches_reference(inst in instances(1..=5, 1..=10, 15, 30)) {
        let table = QuotaTable::new(&inst).unwrap();
        let total: Fraction = table.quotas.iter().copied().sum();
        prop_assert_eq!(total, Fraction::from(inst.total_weight()));
        for p in inst.parties() {
            prop_assert_eq!(table.lower_seats[p] as usize, lower_seats(&inst, p));
            prop_assert_eq!(table.lower_obtainable[p], obtainable_lower(&inst, p));
            prop_assert_eq!(table.upper_obtainable[p], obtainable_upper(&inst, p));
            prop_assert!(Fraction::from(table.lower_obtainable[p]) <= table.quotas[p]);
            prop_assert!(table.quotas[p] <= Fraction::from(table.upper_obtainable[p]));
        }
    }

    #[test]
    fn unit_weights_reduce_to_classic_apportionment(
        v in prop::collection::vec(1u64..=40, 1..=6),
        k in 1usize..=12,
    ) {
        let inst = seatweight::ElectionInstance::new(v, vec![1; k]).unwrap();
        let table = QuotaTable::new(&inst).unwrap();
        for p in inst.parties() {
            prop_assert_eq!(table.lower_obtainable[p] as i128, table.quotas[p].floor());
            prop_assert_eq!(table.upper_obtainable[p] as i128, table.quotas[p].ceil());
        }
        for (weighted, classic) in [
            (Method::ADAMS_W, ClassicMethod::Adams),
            (Method::DHONDT_W, ClassicMethod::DHondt),
        ] {
            let a = weighted.assign(&inst, TieBreak::LowestIndex).unwrap().0;
            let b = Method::Classic(classic).assign(&inst, TieBreak::LowestIndex).unwrap().0;
            prop_assert_eq!(a, b);
        }
        // Classic quota property of largest remainders.
        let lrm = Method::Classic(ClassicMethod::Lrm).assign(&inst, TieBreak::LowestIndex).unwrap().0;
        let reps = lrm.representations(&inst);
        for p in inst.parties() {
            let r = reps[p] as i128;
            prop_assert!(table.quotas[p].floor() <= r && r <= table.quotas[p].ceil());
        }
    }

    #[test]
    fn traces_replay(inst in instances(1..=6, 1..=10, 30, 60), most_votes in any::<bool>()) {
        let tie = if most_votes { TieBreak::MostVotes } else { TieBreak::LowestIndex };
        for method in all_methods() {
            let (s, trace) = method.assign(&inst, tie).unwrap();
            prop_assert_eq!(&trace.assignment, &s);
            prop_assert!(trace.replays(&inst, tie), "{}", method);
        }
    }

    #[test]
    fn checker_matches_reference((inst, seats) in instance_with_assignment(1..=4, 1..=7, 10, 20)) {
        let checker = AxiomChecker::new(&inst).unwrap();
        let s = SeatAssignment::new(&inst, seats.clone()).unwrap();
        let r = reps(&inst, &seats);
        for axiom in Axiom::ALL {
            let expected = holds(&inst, &seats, axiom);
            let verdict = checker.check(&s, axiom).unwrap();
            prop_assert_eq!(verdict.satisfied, expected, "{}", axiom);
            prop_assert_eq!(checker.holds(&seats, axiom), expected, "{}", axiom);
            prop_assert_eq!(verdict.violations.is_empty(), expected);
            for v in &verdict.violations {
                prop_assert!(witness_holds(&inst, &checker, &seats, &r, v.party, &v.witness), "{} {:?}", axiom, v);
            }
        }
        let (num, den) = delta(&inst, &seats);
        prop_assert_eq!(seatweight::delta_distance(&inst, &s).unwrap(), Fraction::new(num, den));
    }

    #[test]
    fn implication_chains((inst, seats) in instance_with_assignment(1..=5, 1..=8, 20, 40)) {
        let c = AxiomChecker::new(&inst).unwrap();
        let h = |a| c.holds(&seats, a);
        let chains = [
            (Axiom::WlqX, Axiom::WlqXR),
            (Axiom::WlqXR, Axiom::Wlq1),
            (Axiom::WlqO, Axiom::Wlq1),
            (Axiom::WuqO, Axiom::WuqX),
            (Axiom::WuqX, Axiom::Wuq1),
            (Axiom::Wefx, Axiom::Wef1),
            (Axiom::Wefx, Axiom::WuqX),
            (Axiom::Wef1, Axiom::Wwef1),
        ];
        for (a, b) in chains {
            prop_assert!(!h(a) || h(b), "{} holds but {} fails", a, b);
        }
    }

    #[test]
    fn methods_meet_their_guarantees(inst in instances(1..=6, 1..=8, 50, 100)) {
        let c = AxiomChecker::new(&inst).unwrap();
        let tie = TieBreak::LowestIndex;
        let greedy = Method::Greedy.assign(&inst, tie).unwrap().0;
        prop_assert!(c.holds_all(greedy.seats(), &[Axiom::WlqXR, Axiom::WuqX]));
        let adams = Method::ADAMS_W.assign(&inst, tie).unwrap().0;
        prop_assert!(c.holds_all(adams.seats(), &[Axiom::Wefx, Axiom::WuqX]));
        let dhondt = Method::DHONDT_W.assign(&inst, tie).unwrap().0;
        prop_assert!(c.holds(dhondt.seats(), Axiom::WlqXR));
    }

    #[test]
    fn dp_agrees_with_brute_force(inst in instances(1..=3, 1..=6, 8, 10)) {
        let checker = AxiomChecker::new(&inst).unwrap();
        for target in DpTarget::ALL {
            let dp = find_by_dp(&inst, target, &Limits::default()).unwrap();
            let bf = brute_force(&inst, &Predicate::from(target.axiom()), CAP).unwrap();
            prop_assert_eq!(dp.exists(), bf.exists(), "{}", target);
            if let Some(s) = dp.found() {
                prop_assert!(checker.holds(s.seats(), target.axiom()), "{} {}", target, s);
            }
        }
    }

    #[test]
    fn two_party_constructions_pass(inst in instances(2..=2, 1..=10, 30, 50)) {
        let checker = AxiomChecker::new(&inst).unwrap();
        for target in DpTarget::ALL {
            let s = two_party_construct(&inst, target).unwrap();
            prop_assert!(checker.holds(s.seats(), target.axiom()), "{} {}", target, s);
        }
    }

    #[test]
    fn brute_force_is_exhaustive_and_deterministic(
        inst in instances(1..=3, 1..=5, 6, 6),
        axiom in prop::sample::select(Axiom::ALL.to_vec()),
    ) {
        let pred = Predicate::from(axiom);
        let a = brute_force(&inst, &pred, CAP).unwrap();
        let b = brute_force(&inst, &pred, CAP).unwrap();
        prop_assert_eq!(&a, &b);
        let expected = all_assignments(inst.num_parties(), inst.num_seats())
            .position(|s| holds(&inst, &s, axiom));
        match (&a.status, expected) {
            (SolveStatus::Found(s), Some(i)) => {
                prop_assert_eq!(a.explored, i as u64 + 1);
                prop_assert_eq!(Some(s.seats().to_vec()), all_assignments(inst.num_parties(), inst.num_seats()).nth(i));
            }
            (SolveStatus::NoneExists, None) => prop_assert_eq!(a.explored, count_assignments(&inst)),
            other => prop_assert!(false, "mismatch {:?}", other),
        }
    }

    #[test]
    fn divisor_methods_keep_their_prefix_in_min_mode(
        inst in instances(1..=6, 1..=8, 50, 100),
        extra_frac in 0.0f64..1.0,
    ) {
        let extra = 1 + (extra_frac * inst.smallest_weight() as f64) as u64;
        let extra = extra.min(inst.smallest_weight());
        for method in divisor_methods() {
            let r = check_house_monotonicity(method, &inst, extra, HmMode::Min, TieBreak::LowestIndex).unwrap();
            prop_assert_eq!(r.inserted_at, inst.num_seats());
            prop_assert_eq!(&r.augmented_assignment.seats()[..inst.num_seats()], r.base_assignment.seats());
            prop_assert!(r.is_monotone(), "{}", method);
        }
    }

    #[test]
    fn hm_augmentation_is_sorted_union(inst in instances(1..=4, 1..=8, 20, 20), extra in 1u64..=25) {
        let r = check_house_monotonicity(Method::Greedy, &inst, extra, HmMode::Full, TieBreak::LowestIndex).unwrap();
        let mut expected = inst.weights().to_vec();
        expected.push(extra);
        expected.sort_by(|a, b| b.cmp(a));
        prop_assert_eq!(r.augmented.weights(), &expected[..]);
        prop_assert_eq!(r.augmented.weight(r.inserted_at), extra);
        prop_assert!(r.augmented.weights()[r.inserted_at + 1..].iter().all(|&w| w < extra));
        for v in &r.violations {
            prop_assert!(v.after < v.before);
        }
    }

    #[test]
    fn documents_round_trip(inst in instances(1..=6, 1..=10, 50, 100)) {
        let li = LabeledInstance::unlabeled(inst.clone());
        let back = parse_instance(&li.render()).unwrap();
        prop_assert_eq!(&back.instance, &inst);
        prop_assert_eq!(back, li);
    }
}

/// Re-evaluates a witness against the reference arithmetic.
fn witness_holds(
    inst: &seatweight::ElectionInstance,
    checker: &AxiomChecker<'_>,
    seats: &[usize],
    r: &[u64],
    p: usize,
    w: &Witness,
) -> bool {
    let q = checker.table().quotas[p];
    let rep = r[p];
    match *w {
        Witness::BelowObtainableLower { representation, bound } => {
            representation == rep && bound == obtainable_lower(inst, p) && rep < bound
        }
        Witness::AboveObtainableUpper { representation, bound } => {
            representation == rep && bound == obtainable_upper(inst, p) && rep > bound
        }
        Witness::NoSeatCrossesQuota { representation, quota } => {
            representation == rep
                && quota == q
                && Fraction::from(rep) < q
                && (0..seats.len())
                    .filter(|&t| seats[t] != p)
                    .all(|t| Fraction::from(rep + inst.weight(t)) <= q)
        }
        Witness::SeatBelowQuota { seat, representation, quota } => {
            representation == rep
                && quota == q
                && seats[seat] != p
                && Fraction::from(rep) < q
                && Fraction::from(rep + inst.weight(seat)) <= q
        }
        Witness::NoSeatDropsQuota { representation, quota } => {
            representation == rep
                && quota == q
                && Fraction::from(rep) > q
                && (0..seats.len())
                    .filter(|&t| seats[t] == p)
                    .all(|t| Fraction::from(rep - inst.weight(t)) >= q)
        }
        Witness::SeatAboveQuota { seat, representation, quota } => {
            representation == rep
                && quota == q
                && seats[seat] == p
                && Fraction::from(rep) > q
                && Fraction::from(rep - inst.weight(seat)) >= q
        }
        Witness::Envy { envied, seat } => {
            let (vx, vy) = (inst.vote(p) as i128, inst.vote(envied) as i128);
            let (rx, ry) = (rep as i128, r[envied] as i128);
            let envies = rx * vy < ry * vx;
            let seat_ok = seat.is_none_or(|t| {
                seats[t] == envied && rx * vy < (ry - inst.weight(t) as i128) * vx
            });
            envied != p && envies && seat_ok
        }
    }
}
