/* SPDX-License-Identifier: Apache-2.0 */
/* Copyright 2026 The adaptive-cp authors */

/* Plain C consumer of the public header: compiles as C11 and exercises a full link. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>

#include "acp/acp.h"

#define EXPECT(cond)                                                          \
    do {                                                                      \
        if (!(cond)) {                                                        \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__, #cond,    \
                    acp_last_error());                                        \
            return 1;                                                         \
        }                                                                     \
    } while (0)

int main(void) {
    acp_plan plan;
    EXPECT(acp_plan_from_cp(60e-6, 1e6, 12e-6, 24, &plan) == ACP_OK);
    EXPECT(plan.N == 48 && plan.K == 12);

    acp_link_config cfg = {0};
    cfg.waveform = ACP_WAVEFORM_DFTS_OFDM;
    cfg.backend = ACP_BACKEND_DIRECT;
    cfg.plan = plan;
    cfg.map_mode = ACP_MAP_LOCALIZED;
    cfg.map_offset = 12;
    cfg.map_stride = 1;
    cfg.equalizer = ACP_EQ_ZERO_FORCING;

    acp_link* link = NULL;
    EXPECT(acp_link_create(&cfg, &link) == ACP_OK);

    double u[48];
    double u_hat[48];
    EXPECT(acp_random_symbols(ACP_MOD_QPSK, 24, 1, 0, u) == ACP_OK);

    acp_signal* x = NULL;
    acp_signal* y = NULL;
    acp_signal* h = NULL;
    acp_channel* ch = NULL;
    EXPECT(acp_tx_chain(link, u, 24, &x) == ACP_OK);
    EXPECT(acp_signal_length(x) == 60);
    EXPECT(acp_channel_random(12, 3.0, 1, 1, &ch) == ACP_OK);
    EXPECT(acp_apply_channel(x, ch, 0, 0.0, 0, &y) == ACP_OK);
    EXPECT(acp_cir_as_signal(ch, 13, 1e-6, &h) == ACP_OK);
    EXPECT(acp_rx_chain(link, y, h, u_hat, 48) == ACP_OK);

    acp_link_metrics m;
    EXPECT(acp_measure(u, u_hat, 24, ACP_MOD_QPSK, NULL, NULL, &m) == ACP_OK);
    EXPECT(m.evm_db <= -100.0 && m.ber == 0.0);

    /* failures report a status and a message */
    EXPECT(acp_plan_from_cp(10e-6, 32e6, 20e-6, 1, &plan) == ACP_ERR_CP_EXCEEDS_SYMBOL);
    EXPECT(acp_last_error()[0] != '\0');
    EXPECT(acp_link_create(NULL, &link) == ACP_ERR_INVALID_ARGUMENT);

    acp_signal_destroy(x);
    acp_signal_destroy(y);
    acp_signal_destroy(h);
    acp_channel_destroy(ch);
    acp_link_destroy(link);
    acp_signal_destroy(NULL);
    printf("C API link: EVM %.1f dB\n", m.evm_db);
    return 0;
}
