/**
 * Typed client for the session HTTP/JSON protocol.
 *
 * One method per endpoint, no caching, no local state: callers receive the
 * server's JSON verbatim. Non-2xx responses become ApiError with the
 * server's detail string; transport failures bubble up unchanged so the
 * caller can tell "the server said no" from "the server never answered".
 */
export class ApiError extends Error {
    status;
    detail;
    constructor(status, detail) {
        super(`request failed (${status}): ${detail}`);
        this.status = status;
        this.detail = detail;
        this.name = "ApiError";
    }
}
export class ApiClient {
    baseUrl;
    fetchImpl;
    constructor(baseUrl, fetchImpl) {
        this.baseUrl = baseUrl;
        // wrap rather than store bare fetch: browsers require the window receiver
        this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
    }
    async request(method, path, body) {
        const init = { method };
        if (body !== undefined) {
            init.headers = { "Content-Type": "application/json" };
            init.body = JSON.stringify(body);
        }
        const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
        const text = await response.text();
        let data = null;
        if (text) {
            try {
                data = JSON.parse(text);
            }
            catch {
                data = text;
            }
        }
        if (!response.ok) {
            throw new ApiError(response.status, describeDetail(data));
        }
        return data;
    }
    createSession(config) {
        return this.request("POST", "/sessions", config);
    }
    query(sessionId) {
        return this.request("GET", `/sessions/${sessionId}/query`);
    }
    answer(sessionId, response) {
        return this.request("POST", `/sessions/${sessionId}/answer`, { response });
    }
    preference(sessionId, judgment) {
        return this.request("POST", `/sessions/${sessionId}/preference`, judgment);
    }
    report(sessionId) {
        return this.request("GET", `/sessions/${sessionId}/report`);
    }
}
function describeDetail(data) {
    if (typeof data === "string") {
        return data;
    }
    if (data && typeof data === "object" && "detail" in data) {
        const detail = data.detail;
        if (typeof detail === "string") {
            return detail;
        }
        return JSON.stringify(detail);
    }
    return JSON.stringify(data);
}
