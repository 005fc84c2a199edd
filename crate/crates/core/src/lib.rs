//! Econometrics toolkit for studying how exchange rates and domestic and
//! foreign bond yields move a stock market: GARCH volatility, unit-root,
//! cointegration, causality and heteroskedasticity tests, principal
//! component regression and ARDL models, plus the closed-form valuation
//! and macro sensitivity calculators that motivate them.

pub mod ardl;
pub mod error;
pub mod factor;
pub mod format;
pub mod ingest;
pub mod numerics;
pub mod pipeline;
pub mod series;
pub mod stattests;
pub mod theory;
pub mod volatility;

pub use error::{Error, ErrorClass, Result};
pub use series::TradingSeries;
