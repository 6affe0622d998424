//! Exterior derivative, contraction, Lie derivative and the super bracket on
//! polynomial vector fields and forms.

use num_traits::One;
use smallvec::SmallVec;

use super::element::Element;
use super::generator::{Generator, Kind};
use super::monomial::Monomial;
use super::{AlgebraError, Rational};

fn int(c: i64) -> Rational {
    Rational::from_integer(c.into())
}

fn form_indices(g: &Generator) -> &[u8] {
    match g.kind() {
        Kind::Form(a) => a,
        Kind::VectorField(_) => unreachable!("caller checked for a form"),
    }
}

fn direction(g: &Generator) -> usize {
    match g.kind() {
        Kind::VectorField(k) => *k as usize,
        Kind::Form(_) => unreachable!("caller checked for a vector field"),
    }
}

/// Inserts `k` into the sorted index list; the sign is that of moving `dx_k`
/// from the front to its sorted slot. `None` if `k` is already present.
fn insert_index(a: &[u8], k: u8) -> Option<(i64, SmallVec<[u8; 4]>)> {
    let pos = a.partition_point(|&x| x < k);
    if a.get(pos) == Some(&k) {
        return None;
    }
    let mut out: SmallVec<[u8; 4]> = SmallVec::with_capacity(a.len() + 1);
    out.extend_from_slice(&a[..pos]);
    out.push(k);
    out.extend_from_slice(&a[pos..]);
    Some((if pos % 2 == 0 { 1 } else { -1 }, out))
}

/// `dx^A ∧ dx^B` as a sign and merged index list, `None` if they overlap.
fn merge_indices(a: &[u8], b: &[u8]) -> Option<(i64, SmallVec<[u8; 4]>)> {
    let mut inversions = 0usize;
    for &x in a {
        for &y in b {
            if x == y {
                return None;
            }
            if x > y {
                inversions += 1;
            }
        }
    }
    let mut out: SmallVec<[u8; 4]> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    Some((if inversions % 2 == 0 { 1 } else { -1 }, out))
}

fn d_generator(g: &Generator, out: &mut Element, coef: &Rational) {
    let a = form_indices(g);
    for k in 0..g.dim() {
        let Some((e, mono)) = g.monomial().derivative(k) else { continue };
        let Some((sign, idx)) = insert_index(a, k as u8) else { continue };
        out.add_term(Generator::new(Kind::Form(idx), mono), coef * int(sign * e as i64));
    }
}

/// `d(x^P dx^A) = Σ_k ∂_k(x^P) dx_k ∧ dx^A`, extended linearly.
pub fn exterior_derivative(e: &Element) -> Result<Element, AlgebraError> {
    if let Some(g) = e.generators().find(|g| g.is_vector_field()) {
        return Err(AlgebraError::NotAForm(g.to_string()));
    }
    let mut out = Element::zero();
    for (g, c) in e.iter() {
        d_generator(g, &mut out, c);
    }
    Ok(out)
}

/// Wedge product of two form generators, `None` when it vanishes.
pub fn wedge_forms(a: &Generator, b: &Generator) -> Option<(i64, Generator)> {
    let (sign, idx) = merge_indices(form_indices(a), form_indices(b))?;
    Some((sign, Generator::new(Kind::Form(idx), a.monomial().mul(b.monomial()))))
}

fn interior_generator(x: &Generator, g: &Generator, out: &mut Element, coef: &Rational) {
    let k = direction(x) as u8;
    let a = form_indices(g);
    let Some(pos) = a.iter().position(|&i| i == k) else { return };
    let mut idx: SmallVec<[u8; 4]> = a.into();
    idx.remove(pos);
    let sign = if pos % 2 == 0 { 1 } else { -1 };
    let mono = x.monomial().mul(g.monomial());
    out.add_term(Generator::new(Kind::Form(idx), mono), coef * int(sign));
}

fn check_pair(x: &Element, e: &Element) -> Result<(), AlgebraError> {
    if let Some(g) = x.generators().find(|g| g.is_form()) {
        return Err(AlgebraError::NotAVectorField(g.to_string()));
    }
    if let Some(g) = e.generators().find(|g| g.is_vector_field()) {
        return Err(AlgebraError::NotAForm(g.to_string()));
    }
    Ok(())
}

/// Contraction `i_X e`; zero on functions.
pub fn interior_product(x: &Element, e: &Element) -> Result<Element, AlgebraError> {
    check_pair(x, e)?;
    let mut out = Element::zero();
    for (xg, xc) in x.iter() {
        for (g, c) in e.iter() {
            interior_generator(xg, g, &mut out, &(xc * c));
        }
    }
    Ok(out)
}

/// `L_X e = i_X(de) + d(i_X e)`.
pub fn lie_derivative(x: &Element, e: &Element) -> Result<Element, AlgebraError> {
    check_pair(x, e)?;
    let de = exterior_derivative(e)?;
    let a = interior_product(x, &de)?;
    let b = exterior_derivative(&interior_product(x, e)?)?;
    Ok(a + b)
}

/// Lie derivative from the coordinate formula
/// `L_{f∂_k}(g dx^A) = f ∂_k(g) dx^A + g (dx^A with dx_k replaced by df)`.
///
/// Independent of [`lie_derivative`]; the two must agree.
pub fn lie_derivative_coordinates(x: &Element, e: &Element) -> Result<Element, AlgebraError> {
    check_pair(x, e)?;
    let mut out = Element::zero();
    for (xg, xc) in x.iter() {
        let k = direction(xg);
        let f = xg.monomial();
        for (g, c) in e.iter() {
            let coef = xc * c;
            let a = form_indices(g);
            if let Some((ek, dg)) = g.monomial().derivative(k) {
                out.add_term(
                    Generator::new(g.kind().clone(), f.mul(&dg)),
                    &coef * int(ek as i64),
                );
            }
            if let Some(pos) = a.iter().position(|&i| i as usize == k) {
                for l in 0..xg.dim() {
                    let Some((el, df)) = f.derivative(l) else { continue };
                    let mut rest: SmallVec<[u8; 4]> = a.into();
                    rest.remove(pos);
                    // dx_l takes slot `pos`: move it to the front first.
                    let Some((sign, idx)) = insert_index(&rest, l as u8) else { continue };
                    let front = if pos % 2 == 0 { 1 } else { -1 };
                    out.add_term(
                        Generator::new(Kind::Form(idx), g.monomial().mul(&df)),
                        &coef * int(front * sign * el as i64),
                    );
                }
            }
        }
    }
    Ok(out)
}

fn vector_bracket(x: &Generator, y: &Generator, out: &mut Element, coef: &Rational) {
    // [f ∂_i, g ∂_j] = f ∂_i(g) ∂_j - g ∂_j(f) ∂_i
    let (i, j) = (direction(x), direction(y));
    if let Some((e, dg)) = y.monomial().derivative(i) {
        out.add_term(Generator::vector_field(j, x.monomial().mul(&dg)), coef * int(e as i64));
    }
    if let Some((e, df)) = x.monomial().derivative(j) {
        out.add_term(Generator::vector_field(i, y.monomial().mul(&df)), coef * int(-(e as i64)));
    }
}

fn lie_generator(x: &Generator, g: &Generator, out: &mut Element, coef: &Rational) {
    let mut de = Element::zero();
    d_generator(g, &mut de, &Rational::one());
    for (h, c) in de.iter() {
        interior_generator(x, h, out, &(coef * c));
    }
    let mut ix = Element::zero();
    interior_generator(x, g, &mut ix, &Rational::one());
    for (h, c) in ix.iter() {
        d_generator(h, out, &(coef * c));
    }
}

/// Accumulates `coef * [a, b]` for two generators.
pub(crate) fn bracket_generators_into(a: &Generator, b: &Generator, out: &mut Element, coef: &Rational) {
    match (a.is_vector_field(), b.is_vector_field()) {
        (true, true) => vector_bracket(a, b, out, coef),
        (true, false) => lie_generator(a, b, out, coef),
        // [α, X] = -(-1)^{p(α)·0} [X, α]
        (false, true) => lie_generator(b, a, out, &-coef),
        (false, false) => {
            // (-1)^{deg α} d(α ∧ β)
            let Some((sign, ab)) = wedge_forms(a, b) else { return };
            let deg = a.kind_index() - 1;
            let s = if deg % 2 == 0 { sign } else { -sign };
            d_generator(&ab, out, &(coef * int(s)));
        }
    }
}

/// The super bracket of two generators.
pub fn bracket_generators(a: &Generator, b: &Generator) -> Element {
    let mut out = Element::zero();
    bracket_generators_into(a, b, &mut out, &Rational::one());
    out
}

/// The super bracket: Lie bracket on vector fields, Lie derivative of a form
/// along a field, `(-1)^a d(α ∧ β)` on an `a`-form `α` and a form `β`, and
/// `[α, X] = -[X, α]` for a form against a field.
pub fn bracket(a: &Element, b: &Element) -> Element {
    let mut out = Element::zero();
    for (g, c) in a.iter() {
        for (h, d) in b.iter() {
            bracket_generators_into(g, h, &mut out, &(c * d));
        }
    }
    out
}

/// `E = Σ_k x_k ∂/∂x_k`.
pub fn euler_field(n: usize) -> Element {
    assert!(n >= 1, "dimension must be positive");
    (0..n)
        .map(|k| {
            let mut exps = vec![0; n];
            exps[k] = 1;
            (Generator::vector_field(k, Monomial::new(exps)), Rational::one())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_element;

    fn p1(s: &str) -> Element {
        parse_element(s, 1).unwrap()
    }

    fn p2(s: &str) -> Element {
        parse_element(s, 2).unwrap()
    }

    #[test]
    fn exterior_derivative_examples() {
        assert_eq!(exterior_derivative(&p1("x^2")).unwrap(), p1("2 x dx"));
        assert!(exterior_derivative(&p1("x dx")).unwrap().is_zero());
        assert_eq!(exterior_derivative(&p2("x1 x2")).unwrap(), p2("x2 dx1 + x1 dx2"));
        assert!(matches!(exterior_derivative(&p1("d/dx")), Err(AlgebraError::NotAForm(_))));
    }

    #[test]
    fn exterior_derivative_matches_finite_differences() {
        // f = x1^2 x2 + 3 x1 x2^3, compared against central differences
        let f = |x: f64, y: f64| x * x * y + 3.0 * x * y.powi(3);
        let df = exterior_derivative(&p2("x1^2 x2 + 3 x1 x2^3")).unwrap();
        let eval = |e: &Element, k: usize, x: f64, y: f64| -> f64 {
            e.iter()
                .filter(|(g, _)| matches!(g.kind(), Kind::Form(a) if a.as_slice() == [k as u8]))
                .map(|(g, c)| {
                    let ex = g.monomial().exponents();
                    let c: f64 = c.numer().to_string().parse::<f64>().unwrap()
                        / c.denom().to_string().parse::<f64>().unwrap();
                    c * x.powi(ex[0] as i32) * y.powi(ex[1] as i32)
                })
                .sum()
        };
        let h = 1e-5;
        for &(x, y) in &[(0.3, -1.2), (1.7, 0.4), (-0.8, 2.1)] {
            let fd_x = (f(x + h, y) - f(x - h, y)) / (2.0 * h);
            let fd_y = (f(x, y + h) - f(x, y - h)) / (2.0 * h);
            assert!((eval(&df, 0, x, y) - fd_x).abs() < 1e-6);
            assert!((eval(&df, 1, x, y) - fd_y).abs() < 1e-6);
        }
    }

    #[test]
    fn interior_product_examples() {
        assert_eq!(interior_product(&p1("d/dx"), &p1("x^2 dx")).unwrap(), p1("x^2"));
        assert!(interior_product(&p1("d/dx"), &p1("x^3")).unwrap().is_zero());
        assert_eq!(interior_product(&p2("d/dx2"), &p2("dx1*dx2")).unwrap(), p2("-dx1"));
        assert!(interior_product(&p1("dx"), &p1("dx")).is_err());
    }

    #[test]
    fn contraction_sign_matches_bilinear_evaluation() {
        // (dx1∧dx2)(u, v) = u1 v2 - u2 v1; contracting with e2 gives v ↦ -v1
        let omega = |u: [i64; 2], v: [i64; 2]| u[0] * v[1] - u[1] * v[0];
        let contracted = interior_product(&p2("d/dx2"), &p2("dx1*dx2")).unwrap();
        for v in [[1, 0], [0, 1]] {
            let expected = omega([0, 1], v);
            let got: i64 = contracted
                .iter()
                .map(|(g, c)| match g.kind() {
                    Kind::Form(a) if a.len() == 1 => c.to_integer().try_into().unwrap_or(0i64) * v[a[0] as usize],
                    _ => panic!("expected a 1-form"),
                })
                .sum();
            assert_eq!(got, expected);
        }
    }

    #[test]
    fn lie_derivative_examples() {
        assert_eq!(lie_derivative(&p1("x d/dx"), &p1("dx")).unwrap(), p1("dx"));
        assert_eq!(lie_derivative(&p1("d/dx"), &p1("x")).unwrap(), p1("1"));
        assert!(lie_derivative(&p1("d/dx"), &p1("dx")).unwrap().is_zero());
        assert!(lie_derivative(&p1("x"), &p1("dx")).is_err());
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&p1("d/dx"), &p1("x^2 d/dx")), p1("2 x d/dx"));
        assert!(bracket(&p1("x d/dx"), &p1("1")).is_zero());
        for j in 0..5u32 {
            let xj = Element::from(Generator::on_line(1, j));
            let expected = if j == 0 {
                Element::zero()
            } else {
                Element::term(int(j as i64), Generator::on_line(2, j - 1))
            };
            assert_eq!(bracket(&p1("1"), &xj), expected);
        }
        assert!(bracket(&p1("x dx"), &p1("dx")).is_zero());
    }

    #[test]
    fn function_bracket_is_d_of_product() {
        for p in 0..4u32 {
            for q in 0..4u32 {
                let a = Element::from(Generator::on_line(1, p));
                let b = Element::from(Generator::on_line(1, q));
                let prod = Element::from(Generator::on_line(1, p + q));
                assert_eq!(bracket(&a, &b), exterior_derivative(&prod).unwrap());
            }
        }
    }

    #[test]
    fn form_against_field_is_antisymmetric_extension() {
        let x = p1("x^2 d/dx");
        let a = p1("x^3");
        assert_eq!(bracket(&a, &x), -bracket(&x, &a));
    }

    #[test]
    fn euler_field_examples() {
        let e = euler_field(1);
        assert_eq!(e, p1("x d/dx"));
        assert_eq!(bracket(&e, &p1("x^2 dx")), p1("3 x^2 dx"));
        assert!(bracket(&e, &p1("x d/dx")).is_zero());
        assert_eq!(bracket(&e, &p1("x^3 d/dx")), p1("2 x^3 d/dx"));
    }

    #[test]
    fn cartan_and_coordinate_lie_derivatives_agree() {
        for n in 1..=3usize {
            for deg_x in 0..=2 {
                for x in Generator::all_of(n, 0, deg_x) {
                    for kind in 1..=(n as u32 + 1) {
                        for deg in 0..=2 {
                            for g in Generator::all_of(n, kind, deg) {
                                let xe = Element::from(x.clone());
                                let ge = Element::from(g.clone());
                                assert_eq!(
                                    lie_derivative(&xe, &ge).unwrap(),
                                    lie_derivative_coordinates(&xe, &ge).unwrap(),
                                    "L_{x} {g}"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn d_squared_vanishes_on_forms() {
        for n in 1..=3usize {
            for kind in 1..=(n as u32 + 1) {
                for deg in 0..=3 {
                    for g in Generator::all_of(n, kind, deg) {
                        let d1 = exterior_derivative(&g.clone().into()).unwrap();
                        assert!(exterior_derivative(&d1).unwrap().is_zero());
                    }
                }
            }
        }
    }
}
