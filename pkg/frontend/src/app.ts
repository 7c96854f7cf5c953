/** DOM wiring: binds the view model to the page and re-renders on change. */

import { ApiClient } from "./api.js";
import { ChatViewModel } from "./model.js";
import {
  renderBanner,
  renderDiagnostics,
  renderLanguageOptions,
  renderMessages,
} from "./render.js";

export function mountApp(root: Document, baseUrl = ""): ChatViewModel {
  const vm = new ChatViewModel(new ApiClient(baseUrl));

  const messagesEl = root.getElementById("messages") as HTMLElement;
  const diagnosticsEl = root.getElementById("diagnostics") as HTMLElement;
  const bannerEl = root.getElementById("banner") as HTMLElement;
  const form = root.getElementById("composer") as HTMLFormElement;
  const input = root.getElementById("message-input") as HTMLInputElement;
  const sendButton = root.getElementById("send") as HTMLButtonElement;
  const languageSelect = root.getElementById("language") as HTMLSelectElement;
  const newSessionButton = root.getElementById("new-session") as HTMLButtonElement;

  function render(): void {
    messagesEl.innerHTML = renderMessages(vm.messages, vm.pending);
    messagesEl.scrollTop = messagesEl.scrollHeight;
    diagnosticsEl.innerHTML = renderDiagnostics(vm.lastDiagnostics);
    bannerEl.innerHTML = renderBanner(vm.banner);
    languageSelect.innerHTML = renderLanguageOptions(vm.languages, vm.selectedLanguage);
    const blocked = vm.pending || !vm.sessionId;
    sendButton.disabled = blocked || input.value.trim().length === 0;
    input.disabled = vm.pending;
  }

  vm.onChange(render);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const text = input.value;
    if (!vm.canSend(text)) return;
    input.value = "";
    void vm.send(text);
  });

  input.addEventListener("input", () => {
    sendButton.disabled = vm.pending || !vm.sessionId || input.value.trim().length === 0;
  });

  languageSelect.addEventListener("change", () => vm.setLanguage(languageSelect.value));

  newSessionButton.addEventListener("click", () => void vm.start());

  bannerEl.addEventListener("click", (event) => {
    const target = event.target as HTMLElement;
    const action = target.dataset?.action;
    if (action === "retry") void vm.retry();
    if (action === "new-session") void vm.start();
  });

  void vm.loadLanguages().then(() => vm.start());
  return vm;
}
