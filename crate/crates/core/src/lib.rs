pub mod cancel;
pub mod cli;
pub mod degree;
pub mod enumerative;
pub mod error;
pub mod etale;
pub mod factor;
pub mod groebner;
pub mod gw;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod quotient;
pub mod scalar;
