//! Trapezoidal fuzzy sets: membership evaluation and defuzzification into
//! crisp representative values.

use crate::error::{Error, Result};

/// Fuzzy set whose membership function is the piecewise-linear trapezoid
/// shaped by breakpoints `a <= b <= c <= d`: zero outside `[a, d]`, one on
/// `[b, c]`, linear on the two slopes. Degenerate slopes (`a == b` or
/// `c == d`) step straight to the plateau.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapezoidalFuzzySet {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl TrapezoidalFuzzySet {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let finite = a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite();
        if !finite || !(a <= b && b <= c && c <= d) {
            return Err(Error::InvalidTrapezoid(a, b, c, d));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    /// Membership degree of `x`, in `[0, 1]`.
    ///
    /// Branch order guards the degenerate slopes: when `a == b` every
    /// `x >= a` inside the support already hit the plateau test, so the
    /// divisions never see a zero denominator.
    pub fn membership(&self, x: f64) -> f64 {
        if x < self.a || x > self.d {
            return 0.0;
        }
        if x >= self.b && x <= self.c {
            return 1.0;
        }
        if x < self.b {
            return (x - self.a) / (self.b - self.a);
        }
        (self.d - x) / (self.d - self.c)
    }

    /// Centroid of the area under the membership function, in closed form:
    ///
    /// `x = (d^2 + c^2 + cd - a^2 - b^2 - ab) / (3 (c + d - a - b))`
    ///
    /// Errors with [`Error::ZeroArea`] when `a == b == c == d` (the only
    /// valid shape with `c + d - a - b == 0`); triangular edges are fine.
    pub fn centroid(&self) -> Result<f64> {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let den = c + d - a - b;
        if den == 0.0 {
            return Err(Error::ZeroArea(a));
        }
        Ok((d * d + c * c + c * d - a * a - b * b - a * b) / (3.0 * den))
    }

    /// Midpoint of the plateau `[b, c]`; defined for every valid shape.
    pub fn mean_of_max(&self) -> f64 {
        0.5 * (self.b + self.c)
    }
}

/// Pluggable defuzzification operator mapping a fuzzy set to one crisp value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Defuzzifier {
    /// Centroid of area (the default).
    #[default]
    Centroid,
    /// Midpoint of the membership-1 plateau.
    MeanOfMax,
}

impl Defuzzifier {
    pub fn apply(self, fs: &TrapezoidalFuzzySet) -> Result<f64> {
        match self {
            Defuzzifier::Centroid => fs.centroid(),
            Defuzzifier::MeanOfMax => Ok(fs.mean_of_max()),
        }
    }
}

/// One fuzzy set per node of a graph, indexed by node id.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyVector {
    entries: Vec<TrapezoidalFuzzySet>,
}

impl FuzzyVector {
    pub fn new(entries: Vec<TrapezoidalFuzzySet>) -> Self {
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> &TrapezoidalFuzzySet {
        &self.entries[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &TrapezoidalFuzzySet> {
        self.entries.iter()
    }

    /// Defuzzifies every entry with the given operator.
    pub fn defuzzify(&self, defuzz: Defuzzifier) -> Result<Vec<f64>> {
        self.entries.iter().map(|fs| defuzz.apply(fs)).collect()
    }
}
