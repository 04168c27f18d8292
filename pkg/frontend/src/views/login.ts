/** Login (and first-run registration) screen. */

import { ApiClient, ApiRequestError } from "../api.js";
import { clear, el } from "../dom.js";
import type { Session } from "../types.js";

export function renderLoginView(
  container: HTMLElement,
  client: ApiClient,
  onLogin: (session: Session) => void,
): void {
  clear(container);
  const email = el("input", { class: "login-email", placeholder: "email", type: "email" });
  const credential = el("input", {
    class: "login-credential",
    placeholder: "credential",
    type: "password",
  });
  const message = el("p", { class: "login-message" });
  const button = el("button", { type: "button", class: "login-submit" }, ["Sign in"]);
  button.addEventListener("click", async () => {
    try {
      onLogin(await client.login(email.value, credential.value));
    } catch (error) {
      message.textContent =
        error instanceof ApiRequestError ? error.message : "login failed";
    }
  });

  const regName = el("input", { placeholder: "name" });
  const regEmail = el("input", { placeholder: "email", type: "email" });
  const regRole = el("select");
  for (const role of ["admin", "doctor", "medical_student", "designer", "patient"]) {
    regRole.append(el("option", { value: role }, [role]));
  }
  const regCredential = el("input", { placeholder: "credential", type: "password" });
  const regButton = el("button", { type: "button", class: "register-submit" }, ["Register"]);
  regButton.addEventListener("click", async () => {
    try {
      await client.register(regName.value, regEmail.value, regRole.value, regCredential.value);
      message.textContent = "registered; sign in above";
    } catch (error) {
      message.textContent =
        error instanceof ApiRequestError ? error.message : "registration failed";
    }
  });

  container.append(
    el("section", { class: "login-view" }, [
      el("h2", {}, ["Sign in"]),
      email,
      credential,
      button,
      message,
      el("details", {}, [
        el("summary", {}, ["Register a user"]),
        regName,
        regEmail,
        regRole,
        regCredential,
        regButton,
      ]),
    ]),
  );
}
