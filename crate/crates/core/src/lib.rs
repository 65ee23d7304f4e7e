pub mod bch;
pub mod decoder;
pub mod error;
pub mod gf;
pub mod lut;
pub mod math;
pub mod product;
pub mod channel;
pub mod mixture;
pub mod quantizer;
pub mod de;
pub mod sim;
pub mod cli;
