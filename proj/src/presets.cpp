#include <cstdio>

#include "agl/experiments.hpp"

namespace agl {

std::optional<FigureId> parse_figure_id(std::string_view text)
{
    if (text == "fig4") return FigureId::Fig4;
    if (text == "fig5") return FigureId::Fig5;
    if (text == "fig6") return FigureId::Fig6;
    if (text == "fig7") return FigureId::Fig7;
    if (text == "fig8") return FigureId::Fig8;
    if (text == "fig9") return FigureId::Fig9;
    if (text == "fig10") return FigureId::Fig10;
    return std::nullopt;
}

namespace {

struct Curve {
    std::string series;
    NodeSelector selector;
};

std::string pow_series(double alpha)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "m_pow_%g", alpha);
    return buf;
}

}  // namespace

SweepResult figure_preset(FigureId id, const PresetOptions& options)
{
    NetworkKind kind;
    AdversaryPolicy policy;
    std::vector<Curve> curves;
    const Curve regular{"v_1", NodeSelector::fixed(1)};
    const Curve infected{"v_n", NodeSelector::infected()};

    switch (id) {
    case FigureId::Fig4:
        policy = {0.5, 1.0};
        curves = {regular, infected};
        break;
    case FigureId::Fig5:
        policy = {0.0, 0.5};
        curves = {regular, infected};
        break;
    case FigureId::Fig6:
        policy = {0.5, 0.5};
        curves = {regular, infected};
        break;
    case FigureId::Fig7:
        kind.topology = Topology::FullyConnectedMitm;
        curves = {regular, infected, {"v_A", NodeSelector::adversary()}};
        break;
    case FigureId::Fig8:
        kind.topology = Topology::UnidirectionalRingCapture;
        policy = {0.5, 1.0};
        curves = {infected,
                  {pow_series(0.3), NodeSelector::power_law(0.3)},
                  {"transition", NodeSelector::transition(0.25)},
                  {pow_series(0.8), NodeSelector::power_law(0.8)}};
        break;
    case FigureId::Fig9:
        kind.topology = Topology::UnidirectionalRingCapture;
        policy = {0.0, 0.5};
        curves = {{pow_series(0.3), NodeSelector::power_law(0.3)},
                  {pow_series(0.4), NodeSelector::power_law(0.4)},
                  {pow_series(0.8), NodeSelector::power_law(0.8)}};
        break;
    case FigureId::Fig10:
        kind.topology = Topology::UnidirectionalRingCapture;
        policy = {0.5, 0.5};
        curves = {infected,
                  {pow_series(0.3), NodeSelector::power_law(0.3)},
                  {pow_series(0.8), NodeSelector::power_law(0.8)}};
        break;
    }

    const auto sizes =
        options.sizes.empty() ? geometric_sizes(options.n_min, options.n_max, options.factor) : options.sizes;
    SweepResult out;
    for (const auto& curve : curves) {
        SweepOptions so;
        so.sim = options.sim;
        so.sim_max_n = options.sim_max_n;
        so.series = curve.series;
        auto part = sweep(kind, policy, sizes, curve.selector, so);
        out.rows.insert(out.rows.end(), part.rows.begin(), part.rows.end());
        out.skipped_n.insert(out.skipped_n.end(), part.skipped_n.begin(), part.skipped_n.end());
    }
    return out;
}

}  // namespace agl
