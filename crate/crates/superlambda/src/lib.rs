pub mod dimers;
pub mod lattice;
pub mod oracle;
pub mod polygon;
pub mod snake;
pub mod superalg;
pub mod superfib;
pub mod tpaths;

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Rational = BigRational;
pub type Poly = superalg::SuperPoly<Rational>;
pub type Term = superalg::SuperTerm<Rational>;
pub type SuperNum = superfib::SuperNumber<BigInt>;
