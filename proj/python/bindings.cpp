#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>
#include <variant>

#include "yelpstream/analytics.hpp"
#include "yelpstream/pipeline.hpp"
#include "yelpstream/records.hpp"
#include "yelpstream/regionmap.hpp"
#include "yelpstream/sentiment.hpp"

namespace py = pybind11;
using namespace yelpstream;

namespace {

py::dict record_to_dict(const Record& record) {
    py::dict d;
    d["kind"] = std::string(to_string(kind_of(record)));
    std::visit(
        [&](const auto& rec) {
            using T = std::decay_t<decltype(rec)>;
            if constexpr (std::is_same_v<T, BusinessRecord>) {
                d["business_id"] = rec.business_id;
                d["name"] = rec.name;
                d["state"] = rec.state_abbrev;
                d["city"] = rec.city;
                if (rec.stars) {
                    d["stars"] = *rec.stars;
                } else {
                    d["stars"] = py::none();
                }
                d["categories"] = rec.categories;
            } else if constexpr (std::is_same_v<T, ReviewRecord>) {
                d["review_id"] = rec.review_id;
                d["user_id"] = rec.user_id;
                d["business_id"] = rec.business_id;
                d["stars"] = rec.stars;
                d["date"] = format_timestamp(rec.date);
                d["text"] = rec.text;
            } else if constexpr (std::is_same_v<T, UserRecord>) {
                d["user_id"] = rec.user_id;
                d["yelping_since"] = format_timestamp(rec.yelping_since);
                d["elite_years"] = rec.elite_years;
            } else if constexpr (std::is_same_v<T, TipRecord>) {
                d["user_id"] = rec.user_id;
                d["business_id"] = rec.business_id;
                d["date"] = format_timestamp(rec.date);
                d["text"] = rec.text;
            } else {
                d["business_id"] = rec.business_id;
                py::list stamps;
                for (const auto& ts : rec.timestamps) stamps.append(format_timestamp(ts));
                d["timestamps"] = stamps;
            }
        },
        record);
    return d;
}

py::dict score_to_dict(const TipScore& score) {
    py::dict d;
    d["polarity_sum"] = score.polarity_sum;
    d["label"] = std::string(to_string(score.label));
    d["scored_words"] = score.scored_words;
    d["matched_words"] = score.matched_words;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Streaming analytics engine for Yelp-format NDJSON datasets";

    py::class_<Lexicon>(m, "Lexicon")
        .def_static("load", &Lexicon::load, py::arg("path"))
        .def_static("bundled", &Lexicon::bundled)
        .def_static("from_entries", &Lexicon::from_entries, py::arg("entries"))
        .def("polarity", [](const Lexicon& lex, const std::string& word) {
            return lex.polarity(word);
        })
        .def("score_tip", [](const Lexicon& lex, const std::string& text) {
            return score_to_dict(score_tip(lex, text));
        })
        .def("entries", &Lexicon::entries)
        .def("__len__", &Lexicon::size);

    py::class_<RegionMapper>(m, "RegionMapper")
        .def_static("load", &RegionMapper::load, py::arg("path"))
        .def_static("bundled", &RegionMapper::bundled)
        .def("resolve",
             [](const RegionMapper& mapper, const std::string& abbrev) -> py::object {
                 const Region* region = mapper.find(abbrev);
                 if (!region) return py::none();
                 return py::make_tuple(region->country, region->region_name);
             })
        .def("entries",
             [](const RegionMapper& mapper) {
                 py::dict d;
                 for (const auto& [abbrev, region] : mapper.entries()) {
                     d[py::str(abbrev)] = py::make_tuple(region.country, region.region_name);
                 }
                 return d;
             })
        .def("__len__", &RegionMapper::size);

    m.def("tokenize", [](const std::string& text) { return tokenize(text); }, py::arg("text"));

    m.def("classify",
          [](long long polarity_sum) { return std::string(to_string(classify(polarity_sum))); },
          py::arg("polarity_sum"));

    m.def("month_bucket",
          [](const std::string& timestamp) {
              auto ts = parse_timestamp(timestamp);
              if (!ts) throw py::value_error("bad timestamp: '" + timestamp + "'");
              return format_date(month_bucket(*ts));
          },
          py::arg("timestamp"));

    m.def("parse_record",
          [](const std::string& kind_name, const std::string& line) {
              auto kind = record_kind_from_string(kind_name);
              if (!kind) throw py::value_error("unknown record kind: " + kind_name);
              auto parsed = parse_record(*kind, line);
              if (!ok(parsed)) throw py::value_error(error(parsed).reason);
              return record_to_dict(value(parsed));
          },
          py::arg("kind"), py::arg("line"));

    m.def("run",
          [](const std::string& subcommand, const std::string& dataset_dir,
             const std::string& out_dir, const std::string& mapper, const std::string& lexicon,
             unsigned workers, const std::string& unknown_policy,
             const std::string& null_marker, const std::string& error_log) {
              auto cmd = subcommand_from_string(subcommand);
              if (!cmd) throw py::value_error("unknown subcommand: " + subcommand);
              auto policy = unknown_policy_from_string(unknown_policy);
              if (!policy) throw py::value_error("unknown policy: " + unknown_policy);

              RunConfig config;
              config.dataset_dir = dataset_dir;
              config.output_dir = out_dir;
              config.mapper_path = mapper;
              config.lexicon_path = lexicon;
              config.workers = workers;
              config.unknown_policy = *policy;
              config.null_marker = null_marker;
              config.error_log = error_log;

              std::ostringstream diagnostics;
              RunOutcome outcome;
              {
                  py::gil_scoped_release release;
                  outcome = run(*cmd, config, &diagnostics);
              }
              if (outcome.exit_code != 0) throw std::runtime_error(diagnostics.str());
              return to_json(outcome.report);
          },
          py::arg("subcommand"), py::arg("dataset_dir"), py::arg("out_dir"),
          py::arg("mapper") = "", py::arg("lexicon") = "", py::arg("workers") = 1,
          py::arg("unknown_policy") = "emit-as-unknown", py::arg("null_marker") = "\\N",
          py::arg("error_log") = "");
}
