// SPDX-License-Identifier: Apache-2.0
//
// losq - achievable rates of 1-bit quantized line-of-sight MIMO links
// Copyright (C) 2026 The losq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "losq/experiments.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace losq
{
    using json = nlohmann::json;

    namespace
    {
        constexpr std::uint64_t default_mc_samples = 200000;
        constexpr std::uint64_t default_unquantized_samples = 100000;

        void reject_unknown_keys(const json &section, const std::string &where, const std::set<std::string> &allowed)
        {
            if (!section.is_object())
                throw ConfigError(where + ": expected an object");
            for (const auto &item : section.items())
                if (!allowed.count(item.key()))
                    throw ConfigError(where + ": unknown key '" + item.key() + "'");
        }

        template <typename T>
        T get(const json &section, const std::string &key, const std::string &where)
        {
            try
            {
                return section.at(key).get<T>();
            }
            catch (const json::exception &e)
            {
                throw ConfigError(where + "." + key + ": " + e.what());
            }
        }

        // Accepts a scalar or a list.
        template <typename T>
        std::vector<T> get_list(const json &section, const std::string &key, const std::string &where)
        {
            const auto &v = section.at(key);
            if (v.is_array())
                return get<std::vector<T>>(section, key, where);
            return {get<T>(section, key, where)};
        }

        ArrayKind kind_of(const json &section, const std::string &where)
        {
            try
            {
                return parse_array_kind(get<std::string>(section, "kind", where));
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError(where + ": " + e.what());
            }
        }

        bool positive(double v) { return v > 0.0 && std::isfinite(v); }
    } // namespace

    std::string to_string(EngineChoice engine)
    {
        switch (engine)
        {
        case EngineChoice::AUTO:
            return "auto";
        case EngineChoice::EXACT:
            return "exact";
        case EngineChoice::MC:
            return "mc";
        case EngineChoice::MC_UNQUANTIZED:
            return "mc_unquantized";
        case EngineChoice::CAPACITY:
            return "capacity";
        case EngineChoice::HIGH_SNR:
            return "high_snr";
        }
        return "unknown";
    }

    EngineChoice parse_engine_choice(const std::string &name)
    {
        for (auto e : {EngineChoice::AUTO, EngineChoice::EXACT, EngineChoice::MC, EngineChoice::MC_UNQUANTIZED,
                       EngineChoice::CAPACITY, EngineChoice::HIGH_SNR})
            if (to_string(e) == name)
                return e;
        throw ConfigError("unknown engine '" + name + "'");
    }

    ExperimentConfig parse_config(std::istream &in)
    {
        json root;
        try
        {
            root = json::parse(in, nullptr, true, true);
        }
        catch (const json::parse_error &e)
        {
            throw ConfigError(std::string("config is not valid JSON: ") + e.what());
        }

        reject_unknown_keys(root, "config", {"name", "snr_db", "tx", "rx", "channel", "engine", "packing_catalog"});
        for (const char *required : {"tx", "rx", "snr_db"})
            if (!root.contains(required))
                throw ConfigError(std::string("config: missing section '") + required + "'");

        ExperimentConfig cfg;
        if (root.contains("name"))
            cfg.name = get<std::string>(root, "name", "config");
        cfg.snr_db = get_list<double>(root, "snr_db", "config");
        if (root.contains("packing_catalog"))
            cfg.packing_catalog = get<std::string>(root, "packing_catalog", "config");

        const auto &tx = root.at("tx");
        reject_unknown_keys(tx, "tx", {"kind", "aperture", "count", "constellation"});
        cfg.tx.kind = kind_of(tx, "tx");
        cfg.tx.aperture = get<double>(tx, "aperture", "tx");
        cfg.tx.count = get<std::size_t>(tx, "count", "tx");
        if (tx.contains("constellation"))
            cfg.tx.constellation = get<std::string>(tx, "constellation", "tx");

        const auto &rx = root.at("rx");
        reject_unknown_keys(rx, "rx", {"kind", "aperture", "count", "s"});
        cfg.rx.kind = kind_of(rx, "rx");
        cfg.rx.aperture = get<double>(rx, "aperture", "rx");
        if (rx.contains("count") == rx.contains("s"))
            throw ConfigError("rx: give exactly one of 'count' or 's'");
        if (rx.contains("count"))
            cfg.rx.counts = get_list<std::size_t>(rx, "count", "rx");
        else
            cfg.rx.s_factors = get_list<double>(rx, "s", "rx");

        if (root.contains("channel"))
        {
            const auto &ch = root.at("channel");
            reject_unknown_keys(ch, "channel", {"distance", "wavelength"});
            if (ch.contains("distance"))
                cfg.distance = get<double>(ch, "distance", "channel");
            if (ch.contains("wavelength"))
                cfg.wavelength = get<double>(ch, "wavelength", "channel");
        }

        if (root.contains("engine"))
        {
            const auto &en = root.at("engine");
            reject_unknown_keys(en, "engine", {"kind", "samples", "seed", "exact_max_rx"});
            if (en.contains("kind"))
                cfg.engine = parse_engine_choice(get<std::string>(en, "kind", "engine"));
            if (en.contains("samples"))
                cfg.samples = get<std::uint64_t>(en, "samples", "engine");
            if (en.contains("seed"))
                cfg.seed = get<std::uint64_t>(en, "seed", "engine");
            if (en.contains("exact_max_rx"))
                cfg.exact_max_rx = get<std::size_t>(en, "exact_max_rx", "engine");
        }
        return cfg;
    }

    ExperimentConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file " + path.string());
        return parse_config(in);
    }

    ResolvedExperiment validate_config(const ExperimentConfig &config)
    {
        if (config.name.empty() || config.name.find_first_of(",\n\r\"") != std::string::npos)
            throw ConfigError("name must be non-empty and free of commas, quotes and newlines");
        if (config.snr_db.empty())
            throw ConfigError("snr_db grid is empty");
        for (double s : config.snr_db)
            if (!std::isfinite(s))
                throw ConfigError("snr_db values must be finite");
        if (!positive(config.distance))
            throw ConfigError("channel.distance must be positive");
        if (!positive(config.wavelength))
            throw ConfigError("channel.wavelength must be positive");
        if (!positive(config.tx.aperture) || !positive(config.rx.aperture))
            throw ConfigError("array apertures must be positive");
        if (config.tx.count == 0)
            throw ConfigError("tx.count must be at least 1");
        if (config.tx.kind == ArrayKind::CUSTOM || config.rx.kind == ArrayKind::CUSTOM)
            throw ConfigError("custom arrays cannot be built from a config");
        if (config.rx.counts.empty() == config.rx.s_factors.empty())
            throw ConfigError("rx: give exactly one of 'count' or 's'");

        const std::size_t n_tx = config.tx.count;
        std::optional<PackingCatalog> own_catalog;
        if (config.packing_catalog)
        {
            try
            {
                own_catalog = PackingCatalog::load(*config.packing_catalog);
            }
            catch (const std::exception &e)
            {
                throw ConfigError(e.what());
            }
        }
        const auto catalog = [&]() -> const PackingCatalog &
        { return own_catalog ? *own_catalog : PackingCatalog::builtin(); };

        const auto build = [&](ArrayKind kind, double aperture, std::size_t count, const std::string &side)
        {
            try
            {
                switch (kind)
                {
                case ArrayKind::ULA:
                    return ula_positions(aperture, count);
                case ArrayKind::URA:
                    return ura_positions(aperture, count);
                case ArrayKind::PACKED:
                    return packed_positions(aperture, count, catalog());
                case ArrayKind::CUSTOM:
                    break;
                }
            }
            catch (const std::exception &e)
            {
                throw ConfigError(side + ": " + e.what());
            }
            throw ConfigError(side + ": unsupported array kind");
        };

        std::optional<Constellation> constellation;
        try
        {
            constellation = build_constellation(config.tx.constellation);
            std::size_t total = 1;
            for (std::size_t n = 0; n < n_tx; ++n)
            {
                if (total > default_ensemble_cap / constellation->size())
                    throw ConfigError("input ensemble |A|^N exceeds " + std::to_string(default_ensemble_cap));
                total *= constellation->size();
            }
        }
        catch (const std::invalid_argument &e)
        {
            throw ConfigError(std::string("tx: ") + e.what());
        }

        ResolvedExperiment out{config, build(config.tx.kind, config.tx.aperture, n_tx, "tx"), *constellation, {}, 0, {}};

        std::vector<std::pair<double, std::size_t>> s_and_m;
        if (!config.rx.s_factors.empty())
        {
            for (double s : config.rx.s_factors)
            {
                const double m = s * static_cast<double>(n_tx);
                const double rounded = std::round(m);
                if (!positive(s) || std::abs(m - rounded) > 1e-9 || rounded < 1.0)
                    throw ConfigError("S = " + format_number(s) + " gives M = S*N = " + format_number(m) +
                                      ", which is not a positive integer");
                s_and_m.emplace_back(s, static_cast<std::size_t>(rounded));
            }
        }
        else
        {
            for (std::size_t m : config.rx.counts)
            {
                if (m == 0)
                    throw ConfigError("rx.count must be at least 1");
                s_and_m.emplace_back(static_cast<double>(m) / static_cast<double>(n_tx), m);
            }
        }

        bool needs_samples = false;
        for (const auto &[s, m] : s_and_m)
        {
            ResolvedPoint point{s, build(config.rx.kind, config.rx.aperture, m, "rx"), Engine::EXACT, std::nullopt};
            switch (config.engine)
            {
            case EngineChoice::AUTO:
                point.engine = m <= config.exact_max_rx ? Engine::EXACT : Engine::MC;
                break;
            case EngineChoice::EXACT:
                point.engine = Engine::EXACT;
                if (m > config.exact_max_rx)
                    point.error = "exact engine cap exceeded (M = " + std::to_string(m) + " > " +
                                  std::to_string(config.exact_max_rx) + ")";
                break;
            case EngineChoice::MC:
                point.engine = Engine::MC;
                break;
            case EngineChoice::MC_UNQUANTIZED:
                point.engine = Engine::MC_UNQUANTIZED;
                break;
            case EngineChoice::CAPACITY:
                point.engine = Engine::CAPACITY;
                break;
            case EngineChoice::HIGH_SNR:
                point.engine = Engine::HIGH_SNR;
                break;
            }
            needs_samples = needs_samples || point.engine == Engine::MC || point.engine == Engine::MC_UNQUANTIZED;

            if (std::abs(s - 1.0) < 1e-12)
                out.notes.push_back("S = 1: no oversampling");
            else if (s < 1.0)
                out.notes.push_back("S = " + format_number(s) + ": fewer receive than transmit antennas");
            if (point.error)
                out.notes.push_back(*point.error);
            out.points.push_back(std::move(point));
        }

        if (needs_samples)
        {
            const bool unquantized = config.engine == EngineChoice::MC_UNQUANTIZED;
            out.samples = config.samples.value_or(unquantized ? default_unquantized_samples : default_mc_samples);
            if (out.samples < min_mc_samples)
                throw ConfigError("engine.samples must be at least " + std::to_string(min_mc_samples));
        }
        return out;
    }
} // namespace losq
