#pragma once

#include <string>
#include <utility>
#include <vector>

#include "bideconv/dataset.hpp"
#include "bideconv/estimator.hpp"
#include "bideconv/simulator.hpp"
#include "bideconv/stats.hpp"

namespace bideconv::io {

// Observations: TSV with a feature_id first column and paired patient
// columns `<id>_pre` / `<id>_post`. Features are canonicalised by id on
// load (so file row order never changes results); patients keep file
// order. Throws data_error on malformed input.
Dataset read_counts_tsv(const std::string &path);
void write_counts_tsv(const std::string &path, const Dataset &d);

// Reference profiles: TSV feature_id, log_mean, log_var.
ReferenceProfile read_reference_tsv(const std::string &path);
void write_reference_tsv(const std::string &path, const ReferenceProfile &ref);

void write_truth_json(const std::string &path, const SimTruth &truth);
SimTruth read_truth_json(const std::string &path);

void write_pi_csv(const std::string &path, const std::vector<std::string> &patient_ids,
                  const std::vector<TumourFractions> &pi);
std::pair<std::vector<std::string>, std::vector<TumourFractions>> read_pi_csv(
    const std::string &path);

void write_theta_csv(const std::string &path, const std::vector<std::string> &feature_ids,
                     const std::vector<FeatureTheta> &theta);

void write_trace_csv(const std::string &path, const std::vector<std::string> &labels,
                     const std::vector<double> &values, double initial);

// Outcomes: TSV with patient_id, relapse_1yr and optional time_days,
// event columns (required with --km).
std::vector<OutcomeRecord> read_outcomes_tsv(const std::string &path);

void write_km_csv(const std::string &path,
                  const std::vector<std::pair<std::string, std::vector<KmPoint>>> &curves);

// FNV-1a content digest, hex; recorded in run manifests.
std::string file_digest_hex(const std::string &path);

std::string format_double(double v);

}  // namespace bideconv::io
