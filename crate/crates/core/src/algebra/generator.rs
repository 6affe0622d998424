use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use smallvec::SmallVec;

use super::monomial::Monomial;

/// Which basis field a generator carries: `∂/∂x_k` or `dx_{a_1} ∧ ... ∧ dx_{a_q}`.
///
/// Coordinate indices are 0-based internally and printed 1-based.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Kind {
    VectorField(u8),
    /// Strictly increasing form indices; empty for functions.
    Form(SmallVec<[u8; 4]>),
}

impl Kind {
    pub fn function() -> Kind {
        Kind::Form(SmallVec::new())
    }

    /// 0 for vector fields, `q + 1` for q-forms.
    pub fn index(&self) -> u32 {
        match self {
            Kind::VectorField(_) => 0,
            Kind::Form(a) => a.len() as u32 + 1,
        }
    }

    fn cmp_data(&self, other: &Kind) -> Ordering {
        match (self, other) {
            (Kind::VectorField(a), Kind::VectorField(b)) => a.cmp(b),
            (Kind::Form(a), Kind::Form(b)) => a.cmp(b),
            // only reached for different kind indices, which are compared first
            (Kind::VectorField(_), Kind::Form(_)) => Ordering::Less,
            (Kind::Form(_), Kind::VectorField(_)) => Ordering::Greater,
        }
    }
}

/// One basis symbol of the superalgebra: a monomial times either a coordinate
/// vector field or a coordinate form. A generator of kind `i` and polynomial
/// degree `j` spans part of `K[i][j]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Generator {
    kind: Kind,
    mono: Monomial,
}

/// `(i, j - 1, i mod 2)` for a generator in `K[i][j]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct DoubleWeight {
    pub primary: u32,
    pub secondary: i64,
    pub parity: u32,
}

impl Generator {
    /// Panics if the kind data does not fit the monomial's dimension or the form
    /// indices are not strictly increasing.
    pub fn new(kind: Kind, mono: Monomial) -> Self {
        let n = mono.dim();
        match &kind {
            Kind::VectorField(k) => assert!((*k as usize) < n, "direction out of range"),
            Kind::Form(a) => {
                assert!(a.windows(2).all(|p| p[0] < p[1]), "form indices must increase");
                assert!(a.iter().all(|&k| (k as usize) < n), "form index out of range");
            }
        }
        Generator { kind, mono }
    }

    pub fn vector_field(direction: usize, mono: Monomial) -> Self {
        Generator::new(Kind::VectorField(direction as u8), mono)
    }

    pub fn form<I: IntoIterator<Item = usize>>(indices: I, mono: Monomial) -> Self {
        Generator::new(Kind::Form(indices.into_iter().map(|k| k as u8).collect()), mono)
    }

    pub fn function(mono: Monomial) -> Self {
        Generator::new(Kind::function(), mono)
    }

    /// The unique generator of `K[kind][degree]` on the line (n = 1).
    pub fn on_line(kind: u32, degree: u32) -> Self {
        let mono = Monomial::power(degree);
        match kind {
            0 => Generator::vector_field(0, mono),
            1 => Generator::function(mono),
            2 => Generator::form([0], mono),
            _ => panic!("kind {kind} does not exist on the line"),
        }
    }

    /// Every generator of kind `kind` and polynomial degree `degree` in dimension `n`,
    /// in increasing generator order.
    pub fn all_of(n: usize, kind: u32, degree: u32) -> Vec<Generator> {
        let monos = Monomial::all_of_degree(n, degree);
        let kinds: Vec<Kind> = if kind == 0 {
            (0..n).map(|k| Kind::VectorField(k as u8)).collect()
        } else if kind as usize <= n + 1 {
            subsets(n, kind as usize - 1)
                .into_iter()
                .map(|s| Kind::Form(s.into_iter().map(|k| k as u8).collect()))
                .collect()
        } else {
            Vec::new()
        };
        let mut out = Vec::with_capacity(kinds.len() * monos.len());
        for k in &kinds {
            for m in &monos {
                out.push(Generator { kind: k.clone(), mono: m.clone() });
            }
        }
        out
    }

    pub fn kind(&self) -> &Kind {
        &self.kind
    }

    pub fn monomial(&self) -> &Monomial {
        &self.mono
    }

    pub fn dim(&self) -> usize {
        self.mono.dim()
    }

    pub fn kind_index(&self) -> u32 {
        self.kind.index()
    }

    pub fn parity(&self) -> u32 {
        self.kind_index() % 2
    }

    pub fn degree(&self) -> u32 {
        self.mono.degree()
    }

    pub fn is_vector_field(&self) -> bool {
        matches!(self.kind, Kind::VectorField(_))
    }

    pub fn is_form(&self) -> bool {
        !self.is_vector_field()
    }

    /// Signed weight used before the sign flip: `-i`.
    pub fn original_primary_weight(&self) -> i64 {
        -(self.kind_index() as i64)
    }

    pub fn secondary_weight(&self) -> i64 {
        self.degree() as i64 - 1
    }

    pub fn double_weight(&self) -> DoubleWeight {
        DoubleWeight {
            primary: self.kind_index(),
            secondary: self.secondary_weight(),
            parity: self.parity(),
        }
    }

    pub(crate) fn write_text(&self, f: &mut impl fmt::Write) -> fmt::Result {
        let single = self.dim() == 1;
        let mut mono = String::new();
        self.mono.write_text(&mut mono)?;
        let field = match &self.kind {
            Kind::VectorField(_) if single => "d/dx".to_string(),
            Kind::VectorField(k) => format!("d/dx{}", k + 1),
            Kind::Form(a) if a.is_empty() => String::new(),
            Kind::Form(_) if single => "dx".to_string(),
            Kind::Form(a) => a
                .iter()
                .map(|k| format!("dx{}", k + 1))
                .collect::<Vec<_>>()
                .join("*"),
        };
        match (mono.is_empty(), field.is_empty()) {
            (true, true) => f.write_char('1'),
            (false, true) => f.write_str(&mono),
            (true, false) => f.write_str(&field),
            (false, false) => write!(f, "{mono} {field}"),
        }
    }
}

/// The canonical total order: kind index, then polynomial degree, then the
/// direction or form-index set, then the exponent vector.
impl Ord for Generator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind_index()
            .cmp(&other.kind_index())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| self.kind.cmp_data(&other.kind))
            .then_with(|| self.mono.cmp_lex(&other.mono))
    }
}

impl PartialOrd for Generator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_text(f)
    }
}

/// `(i, deg - 1, i mod 2)`.
pub fn double_weight(g: &Generator) -> DoubleWeight {
    g.double_weight()
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for k in start..n {
            cur.push(k);
            rec(k + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, size, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_weights() {
        let dw = |g: Generator| {
            let d = g.double_weight();
            (d.primary, d.secondary, d.parity)
        };
        assert_eq!(dw(Generator::on_line(0, 2)), (0, 1, 0));
        assert_eq!(dw(Generator::on_line(1, 0)), (1, -1, 1));
        assert_eq!(dw(Generator::on_line(2, 1)), (2, 0, 0));
        assert_eq!(Generator::on_line(2, 1).original_primary_weight(), -2);
    }

    #[test]
    fn order_on_the_line() {
        let d_dx = Generator::on_line(0, 0);
        let x_d_dx = Generator::on_line(0, 1);
        let one = Generator::on_line(1, 0);
        let x = Generator::on_line(1, 1);
        let dx = Generator::on_line(2, 0);
        let mut v = vec![dx.clone(), x.clone(), one.clone(), x_d_dx.clone(), d_dx.clone()];
        v.sort();
        assert_eq!(v, vec![d_dx, x_d_dx, one, x, dx]);
    }

    #[test]
    fn order_breaks_ties_by_direction_then_exponents() {
        let a = Generator::vector_field(0, Monomial::new([0, 1]));
        let b = Generator::vector_field(1, Monomial::new([1, 0]));
        let c = Generator::vector_field(0, Monomial::new([1, 0]));
        assert!(a < c && c < b);
        let f = Generator::form([0], Monomial::new([0, 0]));
        let g = Generator::form([1], Monomial::new([0, 0]));
        assert!(f < g);
    }

    #[test]
    fn counts_per_kind() {
        assert_eq!(Generator::all_of(2, 0, 1).len(), 4);
        assert_eq!(Generator::all_of(2, 2, 2).len(), 6);
        assert_eq!(Generator::all_of(2, 3, 0).len(), 1);
        assert!(Generator::all_of(2, 4, 0).is_empty());
        assert!(Generator::all_of(3, 2, 1).windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn text() {
        assert_eq!(Generator::on_line(0, 2).to_string(), "x^2 d/dx");
        assert_eq!(Generator::on_line(1, 0).to_string(), "1");
        assert_eq!(Generator::on_line(2, 1).to_string(), "x dx");
        let g = Generator::form([0, 2], Monomial::new([2, 0, 1]));
        assert_eq!(g.to_string(), "x1^2 x3 dx1*dx3");
        assert_eq!(Generator::vector_field(1, Monomial::one(2)).to_string(), "d/dx2");
    }
}
