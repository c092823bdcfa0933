#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tfc/gpsolve.hpp"
#include "tfc/layers.hpp"
#include "tfc/painleve.hpp"
#include "tfc/trap.hpp"
#include "tfc/verify.hpp"

namespace tfc::io {

namespace fs = std::filesystem;

/// Column table; every row has header.size() entries.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::vector<double> column(std::size_t j) const;
};

/// %.17g, with "nan"/"inf"/"-inf" spelled out.
std::string format_double(double v);

std::string to_csv(const Table& t);
/// Throws ConfigError on an empty file, a ragged row or a token that is not a number.
Table parse_csv(const std::string& text);
Table read_csv(const fs::path& path);

void write_text(const fs::path& path, const std::string& text);
void write_csv(const fs::path& path, const Table& t);

Table profile_table(const painleve::ProfileSolution& sol);                // x,v,vx
Table tf_table(const trap::TFData& tf);                                    // theta,x,y,beta,curvature
Table radial_table(const gp::GroundState& gs);                             // r,eta,eta_r,W
Table grid_table(const gp::GroundState& gs);                               // eta, row-major
std::string grid_sidecar(const gp::GroundState& gs);                       // JSON metadata for grid_table
Table section_table(const std::vector<layers::SectionRow>& rows);          // t,theta,u_ap,inner,tf

Table measurement_table(const std::vector<verify::Measurement>& rows);
std::vector<verify::Measurement> measurements_from(const Table& t);

std::string report_json(const verify::VerificationReport& rep);
std::string report_csv(const verify::VerificationReport& rep);

}  // namespace tfc::io
