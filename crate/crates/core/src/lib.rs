//! Penny graphs: contact graphs of interior-disjoint unit disks.
pub mod coloring;
pub mod faces;
pub mod generators;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod report;
pub mod suite;
pub mod squaregraph;
