/** Session storage and role-gated navigation (mirrors the API role matrix). */

import type { Role, Session } from "./types.js";

export interface NavItem {
  hash: string;
  label: string;
  roles: Role[];
}

const ALL_ROLES: Role[] = ["admin", "doctor", "medical_student", "designer", "patient"];

/** Screens a role cannot use (the API would 403 its writes) are not listed. */
export const NAV_ITEMS: NavItem[] = [
  { hash: "#/users", label: "Users", roles: ["admin"] },
  { hash: "#/projects", label: "Projects", roles: ["admin", "designer"] },
  { hash: "#/thresholds", label: "Thresholds", roles: ["admin", "doctor", "medical_student"] },
  { hash: "#/series", label: "Series", roles: ALL_ROLES },
  { hash: "#/position", label: "Position", roles: ["admin", "doctor", "medical_student"] },
  { hash: "#/alerts", label: "Alerts", roles: ALL_ROLES },
];

export function navItemsForRole(role: Role): NavItem[] {
  return NAV_ITEMS.filter((item) => item.roles.includes(role));
}

const SESSION_KEY = "cinnamon-session";

export function saveSession(session: Session): void {
  try {
    sessionStorage.setItem(SESSION_KEY, JSON.stringify(session));
  } catch {
    /* storage unavailable (tests, strict browsers): keep in memory only */
  }
}

export function loadSession(): Session | null {
  try {
    const raw = sessionStorage.getItem(SESSION_KEY);
    return raw ? (JSON.parse(raw) as Session) : null;
  } catch {
    return null;
  }
}

export function clearSession(): void {
  try {
    sessionStorage.removeItem(SESSION_KEY);
  } catch {
    /* ignore */
  }
}
