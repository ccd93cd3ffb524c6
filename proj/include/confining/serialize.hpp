#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "confining/agmon.hpp"
#include "confining/domains.hpp"
#include "confining/hardy.hpp"
#include "confining/sigma.hpp"
#include "confining/sturm.hpp"

// JSON views of every report type plus a fixed-layout CSV builder; floating
// values are written so they re-ingest bit-identically.

namespace confining {

// %.17g — enough digits to round-trip a double exactly
std::string fmt17(double x);

nlohmann::json to_json(const TailExponent& t);
nlohmann::json to_json(const EnergyDetail& d);
nlohmann::json to_json(const EndpointClassification& c);
nlohmann::json to_json(const EsaResult& r);
nlohmann::json to_json(const SweepResult& r);
nlohmann::json to_json(const Sigma1Check& c);
nlohmann::json to_json(const DivergenceReport& r);
nlohmann::json to_json(const SigmaVerdict& v);
nlohmann::json to_json(const BrusentsevReport& r);
nlohmann::json to_json(const WronskianCertificate& w);
nlohmann::json to_json(const QuotientReport& q);
nlohmann::json to_json(const SharpnessProbe& p);
nlohmann::json to_json(const GroundState& g);  // summary without the sample arrays
nlohmann::json to_json(const DecayFit& f);
nlohmann::json to_json(const FormIdentityReport& r);
nlohmann::json to_json(const AgmonReport& r);
nlohmann::json to_json(const Domain& d);
nlohmann::json to_json(const GradNormReport& r);
nlohmann::json to_json(const RadialVerdict& v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    void row(std::vector<std::string> cells);
    std::string str() const;  // header line + rows, '\n' terminated
};

// write to the path, or to stdout when the path is empty
void write_text(const std::string& text, const std::string& path);

}  // namespace confining
