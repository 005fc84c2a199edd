//! Unit-root, cointegration, causality and heteroskedasticity tests, plus
//! the correlation screen that decides whether principal components are
//! needed.

mod adf;
mod correlation;
mod granger;
mod johansen;
mod johansen_tables;
mod white;

pub use adf::{
    adf_decision, adf_table, adf_test, adf_test_values, critical_values, mackinnon_p_value,
    schwert_max_lag, AdfResult, DeterministicSpec, LagSelection, Stationarity, ADF_MIN_BASE,
};
pub use correlation::{
    correlation_matrix, correlation_table, multicollinearity_screen, CorrelationMatrix, FlaggedPair,
};
pub use granger::{granger_table, granger_test, granger_test_values, GrangerResult};
pub use johansen::{
    johansen_eigenvalues, johansen_p_value, johansen_table, johansen_test, johansen_test_matrix,
    select_rank, CointegrationResult, JohansenDeterministic, JohansenEigen, RankRow, RankStatistic,
};
pub use johansen_tables::{MAX_DIM as JOHANSEN_MAX_DIM, TAIL_PROBS as JOHANSEN_TAIL_PROBS};
pub use white::{white_table, white_test, WhiteResult};
