//! Holds the acceptance gate in `tests/acceptance.rs`; it is a separate
//! package so that its report runs after every other suite.
