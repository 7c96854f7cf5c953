/**
 * Pure HTML renderers: state in, markup string out. Keeping these free of
 * document access makes the rendering testable without a browser.
 */

import { Diagnostics } from "./api.js";
import { Banner, Message } from "./model.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&#39;");
}

export function renderMessages(messages: Message[], pending: boolean): string {
  const bubbles = messages.map((message) => {
    const classes = ["bubble", message.author, message.failed ? "failed" : ""]
      .filter(Boolean)
      .join(" ");
    const failedMark = message.failed
      ? '<span class="failed-mark" title="Not delivered">!</span>'
      : "";
    return `<div class="${classes}" data-author="${message.author}">` +
      `${escapeHtml(message.text)}${failedMark}</div>`;
  });
  if (pending) {
    bubbles.push('<div class="bubble bot typing" data-author="bot">&hellip;</div>');
  }
  return bubbles.join("\n");
}

export function renderDiagnostics(diagnostics: Diagnostics | undefined): string {
  if (!diagnostics) {
    return '<p class="placeholder">Send a message to see what the bot detected.</p>';
  }
  const parts: string[] = [];

  const tonePrimary = diagnostics.tone_primary ?? "-";
  parts.push(`<div class="diag-row"><dt>tone_primary</dt><dd class="tone-${escapeHtml(
    tonePrimary,
  )}">${escapeHtml(tonePrimary)}</dd></div>`);

  if (diagnostics.tone) {
    const bars = Object.entries(diagnostics.tone.scores)
      .filter(([, score]) => score > 0)
      .sort((a, b) => b[1] - a[1])
      .map(
        ([category, score]) =>
          `<div class="score"><span class="score-name">${escapeHtml(category)}</span>` +
          `<span class="score-bar"><span style="width:${Math.round(score * 100)}%"></span></span>` +
          `<span class="score-value">${score.toFixed(2)}</span></div>`,
      );
    parts.push(`<div class="diag-row"><dt>tone scores</dt><dd>${bars.join("") || "none"}</dd></div>`);
  }

  const topIntent = diagnostics.intents?.[0];
  parts.push(
    `<div class="diag-row"><dt>intent</dt><dd>${
      topIntent
        ? `#${escapeHtml(topIntent.intent)} (${topIntent.confidence.toFixed(2)})`
        : "none"
    }</dd></div>`,
  );

  if (diagnostics.entities && diagnostics.entities.length > 0) {
    const entities = diagnostics.entities
      .map((e) => `@${escapeHtml(e.entity)}:${escapeHtml(e.value)} &ldquo;${escapeHtml(e.surface)}&rdquo;`)
      .join(", ");
    parts.push(`<div class="diag-row"><dt>entities</dt><dd>${entities}</dd></div>`);
  }

  const path = diagnostics.node_path?.join(" &rsaquo; ") ?? diagnostics.fired_node ?? "-";
  parts.push(`<div class="diag-row"><dt>fired node</dt><dd>${path}</dd></div>`);

  if (diagnostics.detected_language) {
    parts.push(
      `<div class="diag-row"><dt>detected</dt><dd>${escapeHtml(
        diagnostics.detected_language.code,
      )} (${diagnostics.detected_language.confidence.toFixed(2)})</dd></div>`,
    );
  }
  if (diagnostics.english_input) {
    parts.push(
      `<div class="diag-row"><dt>english input</dt><dd>${escapeHtml(
        diagnostics.english_input,
      )}</dd></div>`,
    );
  }
  return `<dl class="diagnostics-list">${parts.join("\n")}</dl>`;
}

export function renderLanguageOptions(languages: string[], selected: string | undefined): string {
  return languages
    .map(
      (code) =>
        `<option value="${escapeHtml(code)}"${code === selected ? " selected" : ""}>` +
        `${escapeHtml(code)}</option>`,
    )
    .join("");
}

export function renderBanner(banner: Banner): string {
  if (!banner) return "";
  const action = banner.sessionLost
    ? '<button type="button" data-action="new-session">New conversation</button>'
    : '<button type="button" data-action="retry">Retry</button>';
  return `<div class="banner ${banner.kind}">${escapeHtml(banner.text)} ${action}</div>`;
}
