use divforge::constructions::{g_q, g_q_closed, kummer_multiplicities};
use divforge::criteria::{cns_sum, nixi_inequality};
use divforge::curves::{Curve, Divisor};
use divforge::galois::FieldCtx;
use divforge::rrspaces::rr_dim;
use divforge::semigroups::{floor_identities, gap_set_single, is_pole_number};
use divforge::tower::{c_m, deg_a, tower_genus};
use divforge::zeta::{effective_counts_oracle, LPolynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

const FIELDS: [(u32, usize); 8] = [(2, 1), (2, 3), (2, 5), (3, 1), (3, 3), (5, 2), (13, 1), (7, 2)];

fn field() -> impl Strategy<Value = FieldCtx> {
    (0..FIELDS.len()).prop_map(|i| FieldCtx::new(FIELDS[i].0, FIELDS[i].1).unwrap())
}

/// y^2 + y = x^3 + a x + b over F_{2^n}.
fn elliptic_as(n: usize, a: u64, b: u64) -> Curve {
    let json = format!(r#"{{"q": {{"p": 2, "n": {n}}}, "model": {{"artin_schreier": {{"lhs": [1, 1], "num": [{b}, {a}, 0, 1]}}}}}}"#);
    Curve::from_json(&json).unwrap()
}

/// x^m = prod (y - a_i) over F_p.
fn kummer(p: u32, m: u32, roots: &[u64]) -> Curve {
    let json = format!(r#"{{"q": {{"p": {p}, "n": 1}}, "model": {{"kummer": {{"m": {m}, "roots": {roots:?}}}}}}}"#);
    Curve::from_json(&json).unwrap()
}

fn l_of(c: &Curve) -> LPolynomial {
    LPolynomial::from_counts(c.q(), c.genus(), &c.counts(c.genus()).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_ring_laws(f in field(), xs in prop::array::uniform3(any::<u64>())) {
        let [a, b, c] = xs.map(|x| f.from_index(x % f.order()));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            prop_assert_eq!(f.pow(a, f.order() - 1), f.one());
        }
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
    }

    #[test]
    fn elliptic_counts_round_trip(n in 1usize..=4, a in 0u64..16, b in 0u64..16) {
        let q = 1u64 << n;
        let c = elliptic_as(n, a % q, b % q);
        prop_assert_eq!(c.genus(), 1);
        let l = l_of(&c);
        prop_assert!(l.functional_equation_ok());
        prop_assert!(l.weil_check().ok);
        for r in 1..=3 {
            prop_assert_eq!(BigInt::from(c.count_points(r).unwrap()), l.point_count(r));
        }
        let bs = l.place_counts(4).unwrap();
        let ac = l.effective_counts(4).unwrap();
        for k in 0..=4 {
            prop_assert_eq!(&ac[k], &effective_counts_oracle(&bs, k));
        }
        let cns = cns_sum(&l).unwrap();
        prop_assert_eq!(BigInt::from(q - 1) * cns.a_gm1 + cns.sum, l.class_number());
    }

    #[test]
    fn kummer_zeta_invariants(p in prop::sample::select(vec![5u32, 7, 11, 13]), m in 2u32..=4, r in 2usize..=4) {
        prop_assume!((m as usize).gcd(&r) == 1 && p % m != 0);
        let roots: Vec<u64> = (0..r as u64).collect();
        let c = kummer(p, m, &roots);
        let g = c.genus();
        prop_assert_eq!(g as usize, (m as usize - 1) * (r - 1) / 2);
        let l = l_of(&c);
        prop_assert!(l.weil_check().ok);
        let n = 2 * g as usize + 2;
        let a = l.effective_counts(n).unwrap();
        if g >= 2 {
            prop_assert_eq!(&a[g as usize], &(l.class_number() + BigInt::from(c.q()) * &a[g as usize - 2]));
        }
        let b1 = c.count_points(1).unwrap();
        for mm in 1..=b1.min(5) {
            for k in 2..=n {
                prop_assert!(nixi_inequality(&a, b1, mm, k).unwrap());
            }
        }
    }

    #[test]
    fn divisor_algebra(xs in prop::collection::vec((0u64..5, -4i64..5), 0..6), ys in prop::collection::vec((0u64..5, -4i64..5), 0..6)) {
        let c = kummer(5, 3, &[0, 1]);
        let places = c.rational_places().unwrap();
        let mk = |v: &[(u64, i64)]| -> Divisor {
            c.divisor_from(v.iter().map(|&(i, k)| (places[i as usize % places.len()].clone(), k)))
        };
        let (d, e) = (mk(&xs), mk(&ys));
        let s = d.try_add(&e).unwrap();
        prop_assert_eq!(s.degree(), d.degree() + e.degree());
        prop_assert_eq!(s.try_sub(&e).unwrap(), d.clone());
        prop_assert_eq!(d.neg().degree(), -d.degree());
        prop_assert_eq!(Divisor::from_json(c.fingerprint(), &d.to_json()).unwrap(), d);
    }

    #[test]
    fn riemann_inequality_on_small_curve(xs in prop::collection::vec((0usize..9, -2i64..4), 1..4)) {
        let c = divforge::reference::bundled_curve("hermitian_q2").unwrap();
        let places = c.rational_places().unwrap();
        let d = c.divisor_from(xs.iter().map(|&(i, k)| (places[i % places.len()].clone(), k)));
        let deg = d.degree_i64();
        let dim = rr_dim(&c, &d).unwrap() as i64;
        prop_assert!(dim >= deg + 1 - c.genus() as i64);
        if deg < 0 {
            prop_assert_eq!(dim, 0);
        }
        if deg > 2 * c.genus() as i64 - 2 {
            prop_assert_eq!(dim, deg + 1 - c.genus() as i64);
        }
    }

    #[test]
    fn gaps_and_pole_numbers(m in 2u64..=20, r in 2u64..=20, a in 0u64..80, b in 0u64..80) {
        prop_assume!(m.gcd(&r) == 1);
        let gaps = gap_set_single(m, r).unwrap();
        prop_assert_eq!(gaps.len() as u64, (m - 1) * (r - 1) / 2);
        prop_assert!(gaps.iter().all(|&x| x < 2 * gaps.len() as u64));
        if is_pole_number(m, r, a).unwrap() && is_pole_number(m, r, b).unwrap() {
            prop_assert!(is_pole_number(m, r, a + b).unwrap());
        }
    }

    #[test]
    fn floor_identity_holds(r in 1u64..200, m in 2u64..60) {
        prop_assume!(m.gcd(&r) == 1);
        let rep = floor_identities(r, m).unwrap();
        prop_assert_eq!(rep.sum, rep.expected_sum);
    }

    #[test]
    fn kummer_degree_is_genus(m in 2u64..=40, r in 1u64..=40) {
        prop_assume!(m.gcd(&r) == 1);
        let s = kummer_multiplicities(m, r).unwrap();
        let deg: u64 = s.iter().enumerate().map(|(j, x)| (j as u64 + 1) * x).sum();
        prop_assert_eq!(deg, (m - 1) * (r - 1) / 2);
    }

    #[test]
    fn g_q_closed_form(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]), n in 2u32..40) {
        prop_assert_eq!(g_q(q, n), g_q_closed(q, n));
        prop_assert!(g_q(q, n + 1) >= g_q(q, n));
    }

    #[test]
    fn tower_degree_bookkeeping(q in prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9]), m in 1u32..=16) {
        let want = q.pow(m / 2) - 1;
        prop_assert_eq!(c_m(q, m) - tower_genus(q, m), want);
        prop_assert_eq!(deg_a(q, m), want);
    }
}
