use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use relmod_core::adic;
use relmod_core::functors::{ext, hom_module, matlis_dual, tensor_module, tor};
use relmod_core::linalg::{integer_kernel, kernel_generators, solve_linear, IntegerSolver};
use relmod_core::module::{iso_test, quotient_by_ideal};
use relmod_core::oracle;
use relmod_core::{smith_normal_form, CanonicalForm, Ideal, Matrix, Presentation, RingSpec};

fn b(x: i64) -> BigInt {
    BigInt::from(x)
}

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, b(entries[i * cols + j]));
        }
    }
    m
}

fn arb_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Matrix> {
    (0..=max_dim, 0..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c).prop_map(move |e| matrix(r, c, &e))
    })
}

/// Fraction-free Gaussian elimination.
fn det(m: &Matrix) -> BigInt {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &a[n - 1][n - 1]
}

fn arb_orders(max_len: usize, max_order: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1..=max_order, 0..=max_len)
}

fn cf(ring: RingSpec, orders: &[i64], free: usize) -> CanonicalForm {
    let orders: Vec<BigInt> = orders.iter().map(|&d| b(d)).collect();
    CanonicalForm::from_cyclic_orders(ring, &orders, free)
}

fn arb_finite_z(max_order: u64) -> impl Strategy<Value = CanonicalForm> {
    arb_orders(3, 12)
        .prop_map(|o| cf(RingSpec::Integers, &o, 0))
        .prop_filter("order bound", move |c| {
            c.order().is_some_and(|n| n <= b(max_order as i64))
        })
}

fn arb_z_module() -> impl Strategy<Value = CanonicalForm> {
    (arb_orders(2, 12), 0..=1usize).prop_map(|(o, r)| cf(RingSpec::Integers, &o, r))
}

fn arb_modular() -> impl Strategy<Value = (RingSpec, CanonicalForm, CanonicalForm)> {
    prop::sample::select(vec![4u64, 6, 8, 12]).prop_flat_map(|n| {
        let ring = RingSpec::modulo(n).unwrap();
        (Just(ring), arb_orders(2, n as i64), arb_orders(2, n as i64))
            .prop_map(|(ring, x, y)| (ring, cf(ring, &x, 0), cf(ring, &y, 0)))
    })
}

fn arb_ideal_gen() -> impl Strategy<Value = i64> {
    prop::sample::select(vec![0i64, 1, 2, 3, 4, 6, 12])
}

/// An invertible integer matrix as a product of random elementary operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Matrix {
    let mut m = Matrix::identity(n);
    if n < 2 {
        return m;
    }
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        for col in 0..n {
            let v = m.get(i, col) + b(c) * m.get(j, col);
            m.set(i, col, v);
        }
    }
    m
}

trait Canon {
    fn cf(self) -> CanonicalForm;
}

impl Canon for Presentation {
    fn cf(self) -> CanonicalForm {
        self.canonical().clone()
    }
}

fn elements(c: &CanonicalForm) -> Vec<Vec<u64>> {
    oracle::enumerate_elements(c).unwrap()
}

fn factors(c: &CanonicalForm) -> Vec<u64> {
    c.torsion_factors
        .iter()
        .map(|d| u64::try_from(d).unwrap())
        .collect()
}

fn kills(d: u64, x: &[u64], es: &[u64]) -> bool {
    x.iter()
        .zip(es)
        .all(|(&xi, &e)| ((d % e) * xi).is_multiple_of(e))
}

fn size_of_multiple(d: u64, es: &[u64]) -> u64 {
    es.iter().map(|&e| e / gcd(d % e, e)).product()
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn smith_normal_form_invariants(a in arb_matrix(6, 20)) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inverse), Matrix::identity(a.rows()));
        prop_assert!(det(&s.u).abs().is_one());
        prop_assert!(det(&s.v).abs().is_one());
        let diag = s.diagonal();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        prop_assert_eq!(diag.iter().filter(|x| !x.is_zero()).count(), s.rank);
        prop_assert!(diag[..s.rank].iter().all(|x| !x.is_zero()));
        for w in diag[..s.rank].windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn integer_kernel_matches_brute_force(a in arb_matrix(3, 4)) {
        let k = integer_kernel(&a);
        prop_assert!(a.mul(&k).is_zero());
        let solver = IntegerSolver::new(&k);
        let n = a.cols();
        let mut x = vec![-2i64; n];
        loop {
            let v: Vec<BigInt> = x.iter().map(|&t| b(t)).collect();
            let in_kernel = a.mul_vec(&v).iter().all(Zero::is_zero);
            prop_assert_eq!(in_kernel, solver.contains(&v));
            let Some(i) = x.iter().position(|&t| t < 2) else { break };
            x[i] += 1;
            x[..i].iter_mut().for_each(|t| *t = -2);
        }
    }

    #[test]
    fn modular_solve_matches_brute_force(
        n in prop::sample::select(vec![4u64, 6, 8, 9]),
        a in arb_matrix(2, 9),
        rhs in prop::collection::vec(0i64..9, 2),
    ) {
        let ring = RingSpec::modulo(n).unwrap();
        let rhs: Vec<BigInt> = rhs[..a.rows()].iter().map(|&t| b(t)).collect();
        let got = solve_linear(ring, &a, &rhs).unwrap();
        let mut exists = false;
        let cols = a.cols();
        for code in 0..n.pow(cols as u32) {
            let x: Vec<BigInt> = (0..cols).map(|j| b(((code / n.pow(j as u32)) % n) as i64)).collect();
            if a.mul_vec(&x).iter().zip(&rhs).all(|(l, r)| ring.reduce(&(l - r)).is_zero()) {
                exists = true;
                break;
            }
        }
        prop_assert_eq!(got.is_some(), exists);
        if let Some(x) = got {
            for (l, r) in a.mul_vec(&x).iter().zip(&rhs) {
                prop_assert!(ring.reduce(&(l - r)).is_zero());
            }
        }
        let k = kernel_generators(ring, &a);
        for v in a.mul(&k).columns() {
            prop_assert!(v.iter().all(|t| ring.reduce(t).is_zero()));
        }
    }

    #[test]
    fn canonical_form_is_invariant_under_base_change(
        a in arb_matrix(3, 12),
        row_ops in prop::collection::vec((0usize..3, 0usize..3, -3i64..=3), 0..6),
        col_ops in prop::collection::vec((0usize..3, 0usize..3, -3i64..=3), 0..6),
        ring in prop::sample::select(vec![RingSpec::Integers, RingSpec::modulo(12).unwrap()]),
    ) {
        let p = Presentation::new(ring, a.rows(), a.clone()).unwrap();
        let changed = unimodular(a.rows(), &row_ops).mul(&a).mul(&unimodular(a.cols(), &col_ops));
        let q = Presentation::new(ring, a.rows(), changed).unwrap();
        prop_assert_eq!(p.canonical(), q.canonical());
        prop_assert_eq!(p.pruned().cf(), p.canonical().clone());
        prop_assert_eq!(p.canonical().to_presentation().cf(), p.canonical().clone());
    }

    #[test]
    fn isomorphism_agrees_with_order_census(m in arb_finite_z(64), n in arb_finite_z(64)) {
        let iso = iso_test(&m.to_presentation(), &n.to_presentation()).unwrap();
        let census = oracle::order_census(&m).unwrap() == oracle::order_census(&n).unwrap();
        prop_assert_eq!(iso, census);
    }

    #[test]
    fn functors_agree_with_oracle(m in arb_finite_z(16), n in arb_finite_z(16)) {
        let (pm, pn) = (m.to_presentation(), n.to_presentation());
        prop_assert_eq!(hom_module(&pm, &pn).unwrap().cf(), oracle::formula_hom(&m, &n).unwrap());
        prop_assert_eq!(tensor_module(&pm, &pn).unwrap().cf(), oracle::formula_tensor(&m, &n).unwrap());
        prop_assert_eq!(ext(1, &pm, &pn).unwrap().cf(), oracle::formula_ext1(&m, &n).unwrap());
        prop_assert_eq!(tor(1, &pm, &pn).unwrap().cf(), oracle::formula_tor1(&m, &n).unwrap());
        let count = oracle::filtered_hom_count(&m, &n).unwrap();
        prop_assert_eq!(count, oracle::brute_hom_count(&m, &n).unwrap());
        prop_assert_eq!(Some(b(count as i64)), hom_module(&pm, &pn).unwrap().cf().order());
    }

    #[test]
    fn modular_hom_counts_match_enumeration((ring, m, n) in arb_modular()) {
        let hom = hom_module(&m.to_presentation(), &n.to_presentation()).unwrap();
        let count = oracle::filtered_hom_count(&m, &n).unwrap();
        prop_assert_eq!(hom.canonical().order(), Some(b(count as i64)));
        prop_assert_eq!(hom.ring(), ring);
    }

    #[test]
    fn tor_is_symmetric(m in arb_z_module(), n in arb_z_module(), i in 0usize..3) {
        let (pm, pn) = (m.to_presentation(), n.to_presentation());
        prop_assert_eq!(tor(i, &pm, &pn).unwrap().cf(), tor(i, &pn, &pm).unwrap().cf());
    }

    #[test]
    fn modular_tor_is_symmetric((_ring, m, n) in arb_modular(), i in 0usize..4) {
        let (pm, pn) = (m.to_presentation(), n.to_presentation());
        prop_assert_eq!(tor(i, &pm, &pn).unwrap().cf(), tor(i, &pn, &pm).unwrap().cf());
    }

    #[test]
    fn hom_tensor_adjunction(m in arb_z_module(), n in arb_z_module(), p in arb_z_module()) {
        let (pm, pn, pp) = (m.to_presentation(), n.to_presentation(), p.to_presentation());
        let left = hom_module(&tensor_module(&pm, &pn).unwrap(), &pp).unwrap();
        let right = hom_module(&pm, &hom_module(&pn, &pp).unwrap()).unwrap();
        prop_assert_eq!(left.canonical(), right.canonical());
    }

    #[test]
    fn modular_hom_tensor_adjunction((_ring, m, n) in arb_modular()) {
        let (pm, pn) = (m.to_presentation(), n.to_presentation());
        let p = pn.clone();
        let left = hom_module(&tensor_module(&pm, &pn).unwrap(), &p).unwrap();
        let right = hom_module(&pm, &hom_module(&pn, &p).unwrap()).unwrap();
        prop_assert_eq!(left.canonical(), right.canonical());
    }

    #[test]
    fn ext_tor_duality(m in arb_z_module(), n in arb_finite_z(24), i in 0usize..3) {
        let (pm, pn) = (m.to_presentation(), n.to_presentation());
        let left = ext(i, &pm, &matlis_dual(&pn).unwrap()).unwrap();
        let right = matlis_dual(&tor(i, &pm, &pn).unwrap()).unwrap();
        prop_assert_eq!(left.canonical(), right.canonical());
    }

    #[test]
    fn modular_ext_tor_duality((_ring, m, n) in arb_modular(), i in 0usize..4) {
        let (pm, pn) = (m.to_presentation(), n.to_presentation());
        let left = ext(i, &pm, &matlis_dual(&pn).unwrap()).unwrap();
        let right = matlis_dual(&tor(i, &pm, &pn).unwrap()).unwrap();
        prop_assert_eq!(left.canonical(), right.canonical());
    }

    #[test]
    fn reducedness_matches_element_test(n in arb_finite_z(64), d in arb_ideal_gen()) {
        let a = Ideal::principal(RingSpec::Integers, d);
        let p = n.to_presentation();
        let es = factors(&n);
        let d = d.unsigned_abs();
        let brute = elements(&n).iter().all(|x| !kills(d * d, x, &es) || kills(d, x, &es));
        prop_assert_eq!(adic::is_reduced(&p, &a).unwrap(), brute);
        prop_assert_eq!(adic::is_reduced_via_gamma(&p, &a).unwrap(), brute);
        let coreduced = size_of_multiple(d, &es) == size_of_multiple(d * d, &es);
        prop_assert_eq!(adic::is_coreduced(&p, &a).unwrap(), coreduced);
    }

    #[test]
    fn reducedness_via_gamma_agrees(n in arb_z_module(), d in arb_ideal_gen()) {
        let a = Ideal::principal(RingSpec::Integers, d);
        let p = n.to_presentation();
        prop_assert_eq!(adic::is_reduced(&p, &a).unwrap(), adic::is_reduced_via_gamma(&p, &a).unwrap());
    }

    #[test]
    fn relative_predicates_over_the_ring(n in arb_z_module(), d in arb_ideal_gen()) {
        let a = Ideal::principal(RingSpec::Integers, d);
        let (r, p) = (Presentation::free(RingSpec::Integers, 1), n.to_presentation());
        prop_assert_eq!(adic::is_reduced_wrt(&r, &p, &a).unwrap(), adic::is_reduced(&p, &a).unwrap());
        prop_assert_eq!(adic::is_coreduced_wrt(&r, &p, &a).unwrap(), adic::is_coreduced(&p, &a).unwrap());
    }

    #[test]
    fn idempotent_ideal_makes_everything_reduced((_ring, m, n) in arb_modular().prop_filter("Z/6", |(r, _, _)| *r == RingSpec::modulo(6).unwrap())) {
        let ring = RingSpec::modulo(6).unwrap();
        let a = Ideal::principal(ring, 3);
        prop_assert!(a.is_idempotent());
        let (pm, pn) = (m.to_presentation(), n.to_presentation());
        prop_assert!(adic::is_reduced(&pn, &a).unwrap());
        prop_assert!(adic::is_coreduced(&pn, &a).unwrap());
        prop_assert!(adic::is_reduced_wrt(&pm, &pn, &a).unwrap());
        prop_assert!(adic::is_coreduced_wrt(&pm, &pn, &a).unwrap());
        prop_assert!(adic::is_in_b(&pm, &pn, &a).unwrap());
    }

    #[test]
    fn obstructions_vanish_exactly_on_the_classes(n in arb_finite_z(64), d in arb_ideal_gen()) {
        let z = RingSpec::Integers;
        let a = Ideal::principal(z, d);
        let p = n.to_presentation();
        let gamma = adic::gamma(&p, &a).unwrap().value;
        let a_gamma_zero = quotient_by_ideal(&gamma, &a).unwrap().cf() == *gamma.canonical();
        prop_assert_eq!(adic::is_reduced(&p, &a).unwrap(), a_gamma_zero);
        let lambda = adic::lambda(&p, &a, adic::DEFAULT_KMAX).unwrap().value;
        let a_lambda_zero = quotient_by_ideal(&lambda, &a).unwrap().cf() == *lambda.canonical();
        prop_assert_eq!(adic::is_coreduced(&p, &a).unwrap(), a_lambda_zero);
    }

    #[test]
    fn gamma_and_lambda_split_finite_modules(n in arb_finite_z(64), d in arb_ideal_gen()) {
        let a = Ideal::principal(RingSpec::Integers, d);
        let p = n.to_presentation();
        let gamma = adic::gamma(&p, &a).unwrap().value;
        let lambda = adic::lambda(&p, &a, adic::DEFAULT_KMAX).unwrap().value;
        prop_assert_eq!(gamma.canonical(), lambda.canonical());
        let es = factors(&n);
        let d = d.unsigned_abs();
        let torsion = elements(&n)
            .iter()
            .filter(|x| (1..=6).any(|k| kills(d.pow(k), x, &es)))
            .count();
        prop_assert_eq!(gamma.canonical().order(), Some(b(torsion as i64)));
    }
}
