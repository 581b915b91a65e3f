#include "wew/netcode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "wew/beamforming.hpp"
#include "wew/errors.hpp"

namespace wew::netcode {

std::pair<Message, Message> split_message(const Message& m, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must be in [0, 1]");
    const double exact = alpha * static_cast<double>(m.size());
    // guard the ceiling against representation noise at integer products
    const double rounded = std::nearbyint(exact);
    const std::size_t cut = static_cast<std::size_t>(
        std::abs(exact - rounded) < 1e-9 ? rounded : std::ceil(exact));
    Message priv{Bits(m.bits.begin(), m.bits.begin() + cut), m.origin};
    Message common{Bits(m.bits.begin() + cut, m.bits.end()), m.origin};
    return {std::move(priv), std::move(common)};
}

CommonMessage concat_common(const Message& c1, const Message& c2) {
    CommonMessage cm;
    cm.bits = c1.bits;
    cm.bits.insert(cm.bits.end(), c2.bits.begin(), c2.bits.end());
    cm.boundary = c1.size();
    return cm;
}

std::pair<Message, Message> extract_common(const CommonMessage& cm) {
    if (cm.boundary > cm.bits.size()) throw ProtocolError("common-message boundary out of range");
    Message c1{Bits(cm.bits.begin(), cm.bits.begin() + cm.boundary), Origin::BsToMs1};
    Message c2{Bits(cm.bits.begin() + cm.boundary, cm.bits.end()), Origin::BsToMs2};
    return {std::move(c1), std::move(c2)};
}

Bits extract_part(const CommonMessage& cm, int receiver) {
    auto [c1, c2] = extract_common(cm);
    if (receiver == 1) return c1.bits;
    if (receiver == 2) return c2.bits;
    throw ProtocolError("receiver must be 1 or 2");
}

Message xor_encode(const Message& dl, const Message& ul) {
    if (ul.size() > dl.size()) throw UplinkLongerThanDownlink{};
    Message out{dl.bits, dl.origin};
    for (std::size_t i = 0; i < ul.size(); ++i) out.bits[i] ^= ul.bits[i];
    return out;
}

std::pair<Message, Message> recover_at_endnodes(const Message& broadcast, const Message& known_dl,
                                                const Message& known_ul, std::size_t ul_len) {
    if (known_dl.size() != broadcast.size() || ul_len > broadcast.size() ||
        known_ul.size() > broadcast.size())
        throw LengthMismatch{};
    Message ul_at_bs{Bits(ul_len), Origin::Ms1ToBs};
    for (std::size_t i = 0; i < ul_len; ++i)
        ul_at_bs.bits[i] = broadcast.bits[i] ^ known_dl.bits[i];
    Message dl_at_ms{broadcast.bits, Origin::BsToMs1};
    for (std::size_t i = 0; i < known_ul.size(); ++i) dl_at_ms.bits[i] ^= known_ul.bits[i];
    return {std::move(ul_at_bs), std::move(dl_at_ms)};
}

namespace {

Message random_message(std::size_t len, Origin origin, Rng& rng) {
    Message m;
    m.origin = origin;
    m.bits.resize(len);
    for (auto& b : m.bits) b = static_cast<std::uint8_t>(rng.next() & 1u);
    return m;
}

std::size_t bits_for_rate(double rate) {
    return static_cast<std::size_t>(std::llround(rate));  // T = 2, so rate * T/2
}

}  // namespace

Payloads payloads_for_rates(const rate_model::RateRequirements& rates, Rng& rng) {
    Payloads p;
    p.dl1 = random_message(bits_for_rate(rates.R_D1), Origin::BsToMs1, rng);
    p.dl2 = random_message(bits_for_rate(rates.R_D2), Origin::BsToMs2, rng);
    p.ul1 = random_message(bits_for_rate(rates.R_U1), Origin::Ms1ToBs, rng);
    p.ul2 = random_message(bits_for_rate(rates.R_U2), Origin::Ms2ToBs, rng);
    return p;
}

ProtocolReport simulate_two_phase(const channel::ChannelRealization& ch,
                                  const rate_model::RateRequirements& rates,
                                  const rate_model::SplitFactors& alpha,
                                  const bs_power::BsPowerSolution& bs_solution,
                                  const sbs_power::EtaSolution& eta_solution,
                                  const Payloads& payloads, double sigma2) {
    if (payloads.dl1.size() != bits_for_rate(rates.R_D1) ||
        payloads.dl2.size() != bits_for_rate(rates.R_D2) ||
        payloads.ul1.size() != bits_for_rate(rates.R_U1) ||
        payloads.ul2.size() != bits_for_rate(rates.R_U2))
        throw ProtocolError("payload lengths do not match the configured rates");

    ProtocolReport report;

    // phase-1 gate: BS solution optimal and decodable at both SBSs
    std::array<bool, 2> mac_ok{false, false};
    if (bs_solution.status == sdp::SolveStatus::Optimal) {
        std::array<double, 2> gammaP{0.0, 0.0};
        if (alpha.alpha1 != 0.0 || alpha.alpha2 != 0.0) {
            const auto bf = beamforming::zf_beamformers(ch.h1, ch.h2);
            gammaP[0] = bs_solution.P1 * bf.gain1 / sigma2;
            gammaP[1] = bs_solution.P2 * bf.gain2 / sigma2;
        }
        const std::array<double, 2> gammaC{
            linalg::herm_inner(linalg::outer(ch.h1), bs_solution.W_C) / sigma2,
            linalg::herm_inner(linalg::outer(ch.h2), bs_solution.W_C) / sigma2};
        mac_ok = rate_model::mac_feasible(gammaP, gammaC, {ch.gammaM1, ch.gammaM2}, rates, alpha);
    }
    report.phase1_ok_sbs1 = mac_ok[0];
    report.phase1_ok_sbs2 = mac_ok[1];

    // phase-2 gate: both SBS streams jointly decodable at the BS
    {
        const double eps = rate_model::kRateSlackEps;
        const bool rate1_ok =
            rates.R_D1 <= std::log2(1.0 + eta_solution.eta1 * eta_solution.P_S1 *
                                              ch.h1.norm_sq() / sigma2) +
                              eps;
        const bool rate2_ok =
            rates.R_D2 <= std::log2(1.0 + eta_solution.eta2 * eta_solution.P_S2 *
                                              ch.h2.norm_sq() / sigma2) +
                              eps;
        const bool sum_ok =
            rates.R_D1 + rates.R_D2 <=
            sbs_power::sumrate_value_weighted(eta_solution.eta1, eta_solution.eta2, ch,
                                              eta_solution.P_S1, eta_solution.P_S2, sigma2) +
                eps;
        report.phase2_ok = eta_solution.status == sbs_power::EtaStatus::Optimal && rate1_ok &&
                           rate2_ok && sum_ok;
    }

    // BS side: split both downlink messages, concatenate the common parts
    const auto [p1, c1] = split_message(payloads.dl1, alpha.alpha1);
    const auto [p2, c2] = split_message(payloads.dl2, alpha.alpha2);
    const CommonMessage common = concat_common(c1, c2);

    auto run_flow = [&](const Message& dl, const Message& priv, const CommonMessage& cm,
                        int sbs_index, const Message& ul, bool& dl_ok, bool& ul_ok) {
        const bool phase1_ok = sbs_index == 1 ? mac_ok[0] : mac_ok[1];
        if (!phase1_ok) {
            dl_ok = false;
            ul_ok = false;
            return;
        }
        // SBS rebuilds the original downlink message from its private part
        // and its slice of the common message
        Message rebuilt = priv;
        const Bits common_part = extract_part(cm, sbs_index);
        rebuilt.bits.insert(rebuilt.bits.end(), common_part.begin(), common_part.end());
        // phase 2: broadcast the XOR, both end nodes recover
        const Message broadcast = xor_encode(rebuilt, ul);
        const auto [ul_at_bs, dl_at_ms] = recover_at_endnodes(broadcast, rebuilt, ul, ul.size());
        dl_ok = dl_at_ms.bits == dl.bits;
        ul_ok = report.phase2_ok && ul_at_bs.bits == ul.bits;
        if (dl_ok) report.delivered_dl_bits += dl.size();
        if (ul_ok) report.delivered_ul_bits += ul.size();
    };

    run_flow(payloads.dl1, p1, common, 1, payloads.ul1, report.dl1_ok, report.ul1_ok);
    run_flow(payloads.dl2, p2, common, 2, payloads.ul2, report.dl2_ok, report.ul2_ok);
    return report;
}

std::string to_jsonl(const ProtocolReport& report, std::uint64_t seed_id) {
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "{\"seed_id\":%llu,\"dl1_ok\":%s,\"dl2_ok\":%s,\"ul1_ok\":%s,\"ul2_ok\":%s,"
                  "\"phase1_sbs1\":%s,\"phase1_sbs2\":%s,\"phase2\":%s,"
                  "\"delivered_dl_bits\":%zu,\"delivered_ul_bits\":%zu}",
                  static_cast<unsigned long long>(seed_id), report.dl1_ok ? "true" : "false",
                  report.dl2_ok ? "true" : "false", report.ul1_ok ? "true" : "false",
                  report.ul2_ok ? "true" : "false", report.phase1_ok_sbs1 ? "true" : "false",
                  report.phase1_ok_sbs2 ? "true" : "false", report.phase2_ok ? "true" : "false",
                  report.delivered_dl_bits, report.delivered_ul_bits);
    return buf;
}

}  // namespace wew::netcode
