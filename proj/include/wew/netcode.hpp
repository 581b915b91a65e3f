#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wew/bs_power.hpp"
#include "wew/channel.hpp"
#include "wew/rate_model.hpp"
#include "wew/rng.hpp"
#include "wew/sbs_power.hpp"

namespace wew::netcode {

using Bits = std::vector<std::uint8_t>;  // one bit per element, values 0/1

enum class Origin { BsToMs1, BsToMs2, Ms1ToBs, Ms2ToBs };

struct Message {
    Bits bits;
    Origin origin = Origin::BsToMs1;

    std::size_t size() const { return bits.size(); }
    bool operator==(const Message&) const = default;
};

// Prefix/suffix split: the private part takes ceil(alpha * len) leading bits.
std::pair<Message, Message> split_message(const Message& m, double alpha);

// c1 followed by c2, with the boundary recorded so each receiver can take
// only its own part.
struct CommonMessage {
    Bits bits;
    std::size_t boundary = 0;  // length of part 1

    bool operator==(const CommonMessage&) const = default;
};
CommonMessage concat_common(const Message& c1, const Message& c2);
std::pair<Message, Message> extract_common(const CommonMessage& cm);
Bits extract_part(const CommonMessage& cm, int receiver);  // receiver in {1, 2}

// Zero-pad the uplink to the downlink length, then XOR bitwise.
Message xor_encode(const Message& dl, const Message& ul);

// BS side: broadcast XOR known downlink, truncated to ul_len.
// MS side: broadcast XOR zero-padded known uplink.
std::pair<Message, Message> recover_at_endnodes(const Message& broadcast, const Message& known_dl,
                                                const Message& known_ul, std::size_t ul_len);

struct Payloads {
    Message dl1, dl2, ul1, ul2;
};

// Random payloads sized round(rate * T/2) with T = 2.
Payloads payloads_for_rates(const rate_model::RateRequirements& rates, Rng& rng);

struct ProtocolReport {
    bool dl1_ok = false, dl2_ok = false;
    bool ul1_ok = false, ul2_ok = false;
    bool phase1_ok_sbs1 = false, phase1_ok_sbs2 = false;
    bool phase2_ok = false;
    std::size_t delivered_dl_bits = 0;
    std::size_t delivered_ul_bits = 0;

    bool all_ok() const { return dl1_ok && dl2_ok && ul1_ok && ul2_ok; }
};

// End-to-end run of both phases at the optimized powers. No noise is drawn:
// delivery is gated on the MAC feasibility of the BS solution (phase 1) and
// on the eta constraints (phase 2); delivered flows are recovered bit-exactly
// or not at all.
ProtocolReport simulate_two_phase(const channel::ChannelRealization& ch,
                                  const rate_model::RateRequirements& rates,
                                  const rate_model::SplitFactors& alpha,
                                  const bs_power::BsPowerSolution& bs_solution,
                                  const sbs_power::EtaSolution& eta_solution,
                                  const Payloads& payloads, double sigma2);

std::string to_jsonl(const ProtocolReport& report, std::uint64_t seed_id);

}  // namespace wew::netcode
