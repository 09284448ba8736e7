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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace losq
{
    // SplitMix64 finalizer, used to derive independent stream seeds.
    constexpr std::uint64_t mix64(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // FNV-1a, stable across platforms (std::hash is not).
    constexpr std::uint64_t stable_hash(std::string_view text)
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (char c : text)
        {
            h ^= static_cast<unsigned char>(c);
            h *= 0x100000001b3ULL;
        }
        return h;
    }

    // Derives a stream key from a root seed and a path of integer labels, e.g.
    // (seed, experiment hash, snr index, S index, batch).
    constexpr std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
    {
        std::uint64_t key = mix64(seed);
        for (std::uint64_t label : path)
            key = mix64(key ^ mix64(label + 0x632be59bd9b4e019ULL));
        return key;
    }

    // One exclusive random stream. Never shared between tasks.
    class RngStream
    {
    public:
        explicit RngStream(std::uint64_t key) : engine_(key) {}

        static RngStream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
        {
            return RngStream(derive_key(seed, path));
        }

        double uniform() { return uniform_(engine_); }
        double normal() { return normal_(engine_); }
        std::mt19937_64 &engine() { return engine_; }

    private:
        std::mt19937_64 engine_;
        std::uniform_real_distribution<double> uniform_{0.0, 1.0};
        std::normal_distribution<double> normal_{0.0, 1.0};
    };
} // namespace losq
